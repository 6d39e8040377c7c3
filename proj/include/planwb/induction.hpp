#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "planwb/cdpi.hpp"
#include "planwb/rules.hpp"

namespace planwb {

// Argument roles a feature atom can expose to a candidate rule body: the
// shared object variable, or a numeric slot that must be pinned by a
// comparison drawn from the matching threshold grid.
enum class SlotKind : uint8_t { Object, Value, Distance };

struct BodyTemplate {
  std::string pred;
  std::vector<SlotKind> slots;
  bool negated = false;  // flag predicates only: no numeric slots allowed
};

// Hypothesis-space description for one head predicate: the feature atoms a
// body may draw on, the threshold grids numeric comparisons choose from, and
// the size caps that keep the space finite.
struct ModeBias {
  std::string head_pred;
  int head_arity = 0;  // 0, or 1 taking the shared object variable
  std::string object_var = "R";
  std::vector<BodyTemplate> body;
  std::vector<int> value_grid;     // thresholds for Value slots
  std::vector<int> distance_grid;  // thresholds for Distance slots
  int max_features = 4;            // feature atoms per body
  int max_numeric_atoms = 2;       // feature atoms carrying numeric slots
  int max_len_normal = 8;          // atoms plus comparisons in a normal rule
  int max_len_weak = 6;            // atoms in a weak-constraint body
};

// Loads a bias file and returns one ModeBias per `head` line, all sharing
// the file's body templates, grids, and caps. Directives, one per line
// (# starts a comment):
//   object_var <name>
//   head <pred> <arity>
//   body [not] <pred> <slot>...      slots: object | value | distance
//   value_grid <int>... | <lo>..<hi>
//   distance_grid <int>... | <lo>..<hi>
//   max_features / max_numeric_atoms / max_len / max_len_weak <int>
std::vector<ModeBias> load_bias(const std::string& path);

// Every safe candidate rule inside the bias caps, deterministically ordered:
// body subsets by size then template order; numeric comparisons cycle <=
// before >= over ascending grid values, with the last numeric slot moving
// fastest. Bodies never reference the head predicate, every numeric variable
// carries exactly one comparison, and negated atoms require the object
// variable to be bound by a positive atom.
std::vector<asp::NormalRule> enumerate_space(const ModeBias& bias);

struct CoverageReport {
  int covered = 0;
  int total = 0;
  double percent() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(covered) / static_cast<double>(total);
  }
};

// How many of `pred`'s examples the rules satisfy: every included atom
// derived and no excluded atom derived, evaluated under standard cost-minimal
// choice semantics (an empty selection is allowed when cheapest).
CoverageReport coverage_on(const asp::RuleSet& rules, std::span<const Cdpi> cdpis, int32_t pred);

struct InductionResult {
  asp::RuleSet rules;        // carries the head's coverage percentage
  CoverageReport coverage;   // over every example of the head predicate
  int uncovered = 0;         // coverage.total - coverage.covered
};

// Greedy set cover over the enumerated space: repeatedly adds the candidate
// covering the most currently-uncovered positive examples, considering only
// candidates that never derive an excluded atom of any example (ties: fewer
// body atoms, then enumeration order). Throws std::invalid_argument when the
// bias yields no candidates or the examples never mention the head.
InductionResult induce_rules(std::span<const Cdpi> cdpis, const ModeBias& bias);

// Searches weak-constraint candidates (head atom plus one feature atom;
// weight a numeric variable, negated numeric variable, or ±1; priority 1..2)
// for the smallest set — at most two — under which every step's top-ranked
// example is strictly cost-minimal among that step's candidates; when no set
// is perfect, returns the one ordering the most steps. Single-rank input
// yields the empty set.
std::vector<asp::WeakConstraint> induce_weak_constraints(std::span<const Cdpi> ordered,
                                                         const ModeBias& bias);

// Folds plain rules for one predicate into a single 0 { ... } <upper> choice
// rule with one branch per rule.
asp::AggregateRule wrap_choice(std::span<const asp::NormalRule> rules,
                               const std::string& upper_name);

// Body-literal set difference over union: 0 when both bodies are empty or
// identical as sets, 1 when disjoint. Comparison literals count as literals.
double rule_distance(const asp::NormalRule& a, const asp::NormalRule& b);

// Same measure over the union of body literals of every rule and choice
// branch with the given head predicate in each set (weak constraints are not
// part of either side).
double action_distance(const asp::RuleSet& a, const asp::RuleSet& b, int32_t pred);

// Mean of action_distance over the union of head predicates in both sets.
double mean_action_distance(const asp::RuleSet& a, const asp::RuleSet& b);

}  // namespace planwb
