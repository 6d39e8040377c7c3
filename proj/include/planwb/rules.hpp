#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planwb/atoms.hpp"

namespace planwb::asp {

// AST for the restricted rule language:
//   head :- lit, ..., lit.
//   l { head : lits ; head : lits } u.
//   :~ lits. [w@p, t1, ..., tk]
// Literals are atoms, "not" atoms, or comparisons Var <= c | Var >= c | Var = c.
// Variables are statement-local; names are kept for round-trip printing.

struct Arg {
  enum Kind : uint8_t { Var, Cst } kind = Cst;
  uint8_t var = 0;
  Term cst;

  static Arg variable(uint8_t v) { return {Var, v, {}}; }
  static Arg constant(Term t) { return {Cst, 0, t}; }
};

struct AtomPat {
  int32_t pred = -1;
  uint8_t arity = 0;
  Arg arg[3];
};

enum class CmpOp : uint8_t { Le, Ge, Eq };

struct BodyLit {
  enum Kind : uint8_t { Pos, Neg, Cmp } kind = Pos;
  AtomPat atom;                 // Pos / Neg
  uint8_t cmp_var = 0;          // Cmp
  CmpOp op = CmpOp::Le;
  int32_t rhs = 0;
};

struct NormalRule {
  AtomPat head;
  std::vector<BodyLit> body;
  std::vector<std::string> var_names;
};

struct AggBranch {
  AtomPat head;
  std::vector<BodyLit> body;
  std::vector<std::string> var_names;
};

struct AggregateRule {
  int lower = 0;
  std::optional<int> upper;     // nullopt: symbolic bound, capped by |H|
  std::string upper_name;       // printed form of a symbolic bound
  std::vector<AggBranch> branches;
};

struct WeakConstraint {
  std::vector<BodyLit> body;
  bool weight_is_var = false;
  bool weight_negated = false;  // applies to a variable weight: [-V@...]
  uint8_t weight_var = 0;
  int32_t weight_const = 0;
  int level = 1;
  std::vector<Arg> tuple;
  std::vector<std::string> var_names;
};

struct RuleSet {
  std::vector<NormalRule> rules;
  std::vector<AggregateRule> aggregates;
  std::vector<WeakConstraint> weaks;
  std::vector<std::pair<int32_t, double>> coverage;  // pred id -> percent

  int statement_count() const;
  bool empty() const { return rules.empty() && aggregates.empty() && weaks.empty(); }
  std::optional<double> coverage_of(int32_t pred) const;
  std::string to_text() const;
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::string token;
  ParseError(int line, int column, std::string token, const std::string& what);
};

RuleSet parse_rules(const std::string& text);
RuleSet load_rules(const std::string& path);

std::string to_string(const NormalRule& r);
std::string to_string(const AggregateRule& r);
std::string to_string(const WeakConstraint& w);
std::string to_string(const BodyLit& lit, const std::vector<std::string>& var_names);

}  // namespace planwb::asp
