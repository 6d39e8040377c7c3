#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "planwb/rules.hpp"

namespace planwb::asp {

// Guide mode (the default) never lets a non-empty candidate set resolve to
// the empty choice: an action guide that suggests nothing is useless. For
// example-coverage accounting the standard cost-minimal semantics is wanted
// instead, where an aggregate with lower bound 0 may select nothing.
struct EvalOptions {
  bool force_nonempty_choice = true;
};

// Grounds a rule set against a feature snapshot and returns the full derived
// fact bank (input features + aggregate selections + normal-rule heads).
//
// Evaluation is stratified in two passes, which the parser's restrictions make
// sound:
//   1. Aggregates, in declaration order. For each one the candidate head set H
//      is grounded from feature atoms, then the selected subset minimizes the
//      weak-constraint cost, compared level by level in ascending numeric
//      order (level 1 first). Cost per level is the sum over *distinct*
//      violation tuples (weight, level, terms). Subset sizes are restricted to
//      [max(l, 1), min(u, |H|)] by default (see EvalOptions). Cost ties pick
//      the lexicographically smallest selection (canonical atom order, shorter
//      prefix first).
//   2. Normal rules to fixpoint. Negation only touches feature predicates, so
//      the fixpoint is monotone.
FactBank evaluate(const RuleSet& rs, const FactBank& features);
FactBank evaluate(const RuleSet& rs, const FactBank& features, const EvalOptions& opts);

// Atoms in evaluate(rs, features) whose predicate is one of `action_preds`
// and which are not plain input features, in canonical order.
std::vector<GAtom> entailed_atoms(const RuleSet& rs, const FactBank& features,
                                  std::span<const int32_t> action_preds);

// Summed penalty of `facts` against the weak constraints, per priority level
// and over distinct violation tuples only — the same accounting the choice
// selection above minimizes.
std::map<int, std::int64_t> weak_cost(std::span<const WeakConstraint> weaks,
                                      const FactBank& facts);

// The engine's lexicographic order on penalty maps: level 1 is most
// significant, missing levels count as zero. Returns <0, 0, >0.
int compare_weak_cost(const std::map<int, std::int64_t>& a,
                      const std::map<int, std::int64_t>& b);

}  // namespace planwb::asp
