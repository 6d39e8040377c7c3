#include "planwb/rules.hpp"

#include "planwb/text.hpp"

namespace planwb::asp {

int RuleSet::statement_count() const {
  int n = static_cast<int>(rules.size() + weaks.size());
  for (const auto& agg : aggregates) n += static_cast<int>(agg.branches.size());
  return n;
}

std::optional<double> RuleSet::coverage_of(int32_t pred) const {
  for (const auto& [p, c] : coverage)
    if (p == pred) return c;
  return std::nullopt;
}

namespace {

std::string arg_str(const Arg& a, const std::vector<std::string>& var_names) {
  if (a.kind == Arg::Var) return var_names[a.var];
  if (a.cst.kind == Term::Int) return std::to_string(a.cst.value);
  return Symbols::name(a.cst.value);
}

std::string atom_str(const AtomPat& at, const std::vector<std::string>& var_names) {
  std::string out = Symbols::name(at.pred);
  if (at.arity == 0) return out;
  out += '(';
  for (int i = 0; i < at.arity; ++i) {
    if (i) out += ',';
    out += arg_str(at.arg[i], var_names);
  }
  out += ')';
  return out;
}

std::string body_str(const std::vector<BodyLit>& body,
                     const std::vector<std::string>& var_names) {
  std::string out;
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(body[i], var_names);
  }
  return out;
}

}  // namespace

std::string to_string(const BodyLit& lit, const std::vector<std::string>& var_names) {
  switch (lit.kind) {
    case BodyLit::Pos:
      return atom_str(lit.atom, var_names);
    case BodyLit::Neg:
      return "not " + atom_str(lit.atom, var_names);
    case BodyLit::Cmp: {
      const char* op = lit.op == CmpOp::Le ? "<=" : lit.op == CmpOp::Ge ? ">=" : "=";
      return var_names[lit.cmp_var] + " " + op + " " + std::to_string(lit.rhs);
    }
  }
  return {};
}

std::string to_string(const NormalRule& r) {
  std::string out = atom_str(r.head, r.var_names);
  if (!r.body.empty()) out += " :- " + body_str(r.body, r.var_names);
  return out + ".";
}

std::string to_string(const AggregateRule& r) {
  std::string out = std::to_string(r.lower) + " {";
  for (size_t i = 0; i < r.branches.size(); ++i) {
    if (i) out += " ; ";
    const auto& br = r.branches[i];
    out += atom_str(br.head, br.var_names);
    if (!br.body.empty()) out += " : " + body_str(br.body, br.var_names);
  }
  out += "} ";
  out += r.upper ? std::to_string(*r.upper) : r.upper_name;
  return out + ".";
}

std::string to_string(const WeakConstraint& w) {
  std::string out = ":~ " + body_str(w.body, w.var_names) + ". [";
  if (w.weight_is_var) {
    if (w.weight_negated) out += '-';
    out += w.var_names[w.weight_var];
  } else {
    out += std::to_string(w.weight_const);
  }
  out += "@" + std::to_string(w.level);
  for (const auto& t : w.tuple) out += ", " + arg_str(t, w.var_names);
  return out + "]";
}

std::string RuleSet::to_text() const {
  std::string out;
  if (!coverage.empty()) {
    out += "%cov:";
    for (const auto& [pred, pct] : coverage) {
      out += " " + Symbols::name(pred) + "=" + fmt_real(pct);
    }
    out += "\n";
  }
  for (const auto& agg : aggregates) out += to_string(agg) + "\n";
  for (const auto& w : weaks) out += to_string(w) + "\n";
  for (const auto& r : rules) out += to_string(r) + "\n";
  return out;
}

}  // namespace planwb::asp
