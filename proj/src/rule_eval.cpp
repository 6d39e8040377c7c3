#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "planwb/rule_eval.hpp"

namespace planwb::asp {

namespace {

struct Binding {
  Term val[16];
  uint16_t mask = 0;
};

uint16_t pos_vars(const AtomPat& at) {
  uint16_t m = 0;
  for (int i = 0; i < at.arity; ++i)
    if (at.arg[i].kind == Arg::Var) m |= uint16_t(1) << at.arg[i].var;
  return m;
}

// Reorders body literals so that every comparison / negated literal comes
// after positive atoms binding its variables, preserving textual order
// otherwise. Parser-level safety guarantees this always succeeds.
std::vector<const BodyLit*> order_body(const std::vector<BodyLit>& body) {
  std::vector<const BodyLit*> out;
  out.reserve(body.size());
  std::vector<bool> used(body.size(), false);
  uint16_t bound = 0;
  for (size_t n = 0; n < body.size(); ++n) {
    size_t pick = body.size();
    for (size_t i = 0; i < body.size(); ++i) {
      if (used[i]) continue;
      const BodyLit& l = body[i];
      bool ok = l.kind == BodyLit::Pos ||
                (l.kind == BodyLit::Cmp ? ((bound >> l.cmp_var) & 1) != 0
                                        : (pos_vars(l.atom) & ~bound) == 0);
      if (ok) {
        pick = i;
        break;
      }
    }
    if (pick == body.size()) throw std::logic_error("unsafe rule body survived parsing");
    used[pick] = true;
    out.push_back(&body[pick]);
    if (body[pick].kind == BodyLit::Pos) bound |= pos_vars(body[pick].atom);
  }
  return out;
}

Term ground_arg(const Arg& a, const Binding& b) {
  return a.kind == Arg::Cst ? a.cst : b.val[a.var];
}

GAtom ground_atom(const AtomPat& pat, const Binding& b) {
  GAtom g;
  g.pred = pat.pred;
  g.arity = pat.arity;
  for (int i = 0; i < pat.arity; ++i) g.arg[i] = ground_arg(pat.arg[i], b);
  return g;
}

template <typename Sink>
void match(const std::vector<const BodyLit*>& lits, size_t idx, const FactBank& bank,
           Binding& b, const Sink& sink) {
  if (idx == lits.size()) {
    sink(b);
    return;
  }
  const BodyLit& l = *lits[idx];
  switch (l.kind) {
    case BodyLit::Pos:
      for (const GAtom& f : bank.with_pred(l.atom.pred)) {
        if (f.arity != l.atom.arity) continue;
        uint16_t newly = 0;
        bool ok = true;
        for (int i = 0; i < f.arity && ok; ++i) {
          const Arg& a = l.atom.arg[i];
          if (a.kind == Arg::Cst) {
            ok = a.cst == f.arg[i];
          } else if ((b.mask >> a.var) & 1) {
            ok = b.val[a.var] == f.arg[i];
          } else {
            b.val[a.var] = f.arg[i];
            uint16_t bit = uint16_t(1) << a.var;
            b.mask |= bit;
            newly |= bit;
          }
        }
        if (ok) match(lits, idx + 1, bank, b, sink);
        b.mask &= static_cast<uint16_t>(~newly);
      }
      break;
    case BodyLit::Neg:
      if (!bank.contains(ground_atom(l.atom, b))) match(lits, idx + 1, bank, b, sink);
      break;
    case BodyLit::Cmp: {
      const Term& t = b.val[l.cmp_var];
      if (t.kind != Term::Int) return;  // comparisons only apply to integers
      bool ok = l.op == CmpOp::Le   ? t.value <= l.rhs
                : l.op == CmpOp::Ge ? t.value >= l.rhs
                                    : t.value == l.rhs;
      if (ok) match(lits, idx + 1, bank, b, sink);
      break;
    }
  }
}

template <typename Sink>
void for_each_match(const std::vector<BodyLit>& body, const FactBank& bank,
                    const Sink& sink) {
  auto lits = order_body(body);
  Binding b;
  match(lits, 0, bank, b, sink);
}

// --- Weak-constraint cost -------------------------------------------------

struct Violation {
  int level;
  int64_t weight;
  std::vector<Term> terms;

  bool operator<(const Violation& o) const {
    if (level != o.level) return level < o.level;
    if (weight != o.weight) return weight < o.weight;
    if (terms.size() != o.terms.size()) return terms.size() < o.terms.size();
    for (size_t i = 0; i < terms.size(); ++i) {
      int c = compare(terms[i], o.terms[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

// Ascending level -> summed weight of distinct violation tuples.
using Cost = std::map<int, int64_t>;

void add_violations(const WeakConstraint& w, const FactBank& bank,
                    std::set<Violation>& out) {
  for_each_match(w.body, bank, [&](const Binding& b) {
    int64_t weight;
    if (w.weight_is_var) {
      const Term& t = b.val[w.weight_var];
      if (t.kind != Term::Int) return;  // non-numeric weight carriers do not count
      weight = w.weight_negated ? -int64_t(t.value) : int64_t(t.value);
    } else {
      weight = w.weight_const;
    }
    Violation v;
    v.level = w.level;
    v.weight = weight;
    v.terms.reserve(w.tuple.size());
    for (const Arg& a : w.tuple) v.terms.push_back(ground_arg(a, b));
    out.insert(std::move(v));
  });
}

Cost cost_of(const std::set<Violation>& vs) {
  Cost c;
  for (const auto& v : vs) c[v.level] += v.weight;
  return c;
}

// Lexicographic comparison, most significant level first (ascending numeric
// order); absent levels count as zero.
int compare_cost(const Cost& a, const Cost& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    int level_a = ia != a.end() ? ia->first : std::numeric_limits<int>::max();
    int level_b = ib != b.end() ? ib->first : std::numeric_limits<int>::max();
    int64_t va = 0, vb = 0;
    if (level_a <= level_b) va = (ia++)->second;
    if (level_b <= level_a) vb = (ib++)->second;
    if (va != vb) return va < vb ? -1 : 1;
  }
  return 0;
}

bool cost_is_negative(const Cost& c) {
  for (const auto& [level, v] : c) {
    (void)level;
    if (v != 0) return v < 0;
  }
  return false;
}

// Canonical sequence order on selections (element-wise; shorter prefix wins).
int compare_selection(const std::vector<GAtom>& a, const std::vector<GAtom>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

// --- Aggregate selection ----------------------------------------------------

bool body_mentions(const std::vector<BodyLit>& body, const std::set<int32_t>& preds,
                   bool positives_only) {
  for (const auto& l : body) {
    if (l.kind == BodyLit::Cmp) continue;
    if (l.kind == BodyLit::Neg && positives_only) continue;
    if (preds.count(l.atom.pred)) return true;
  }
  return false;
}

// A weak constraint decomposes per selected atom when it touches the choice
// predicates through exactly one positive literal whose variable arguments all
// reappear in the violation tuple (so distinct atoms yield distinct tuples and
// the total cost is the sum of per-atom costs).
bool additive_for(const WeakConstraint& w, const std::set<int32_t>& choice_preds) {
  const AtomPat* ref = nullptr;
  for (const auto& l : w.body) {
    if (l.kind == BodyLit::Cmp || !choice_preds.count(l.atom.pred)) continue;
    if (l.kind == BodyLit::Neg) return false;
    if (ref) return false;
    ref = &l.atom;
  }
  if (!ref) return true;  // constant in the selection: fine either way
  uint16_t tuple_vars = 0;
  for (const Arg& a : w.tuple)
    if (a.kind == Arg::Var) tuple_vars |= uint16_t(1) << a.var;
  return (pos_vars(*ref) & ~tuple_vars) == 0;
}

std::vector<GAtom> select_subset(const AggregateRule& agg,
                                 const std::vector<WeakConstraint>& weaks,
                                 const FactBank& base, bool force_nonempty) {
  // Ground the candidate head set H.
  std::vector<GAtom> heads;
  for (const auto& br : agg.branches) {
    if (br.body.empty()) {
      heads.push_back(ground_atom(br.head, Binding{}));
      continue;
    }
    for_each_match(br.body, base,
                   [&](const Binding& b) { heads.push_back(ground_atom(br.head, b)); });
  }
  std::sort(heads.begin(), heads.end(),
            [](const GAtom& a, const GAtom& b) { return compare(a, b) < 0; });
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

  const int n = static_cast<int>(heads.size());
  if (n == 0) return {};
  int hi = std::min(agg.upper.value_or(n), n);
  int floor = force_nonempty && hi > 0 ? 1 : 0;
  int lo = std::min(std::max(agg.lower, floor), hi);
  if (hi == 0) return {};

  std::set<int32_t> choice_preds;
  for (const auto& br : agg.branches) choice_preds.insert(br.head.pred);
  std::vector<const WeakConstraint*> relevant;
  for (const auto& w : weaks)
    if (body_mentions(w.body, choice_preds, false)) relevant.push_back(&w);

  bool additive = true;
  for (const auto* w : relevant)
    if (!additive_for(*w, choice_preds)) additive = false;

  if (additive) {
    // Per-atom cost vectors; pick the lo cheapest, then keep extending while
    // the next atom strictly lowers the total (its own cost is negative).
    std::vector<std::pair<Cost, int>> ranked;
    ranked.reserve(heads.size());
    for (int i = 0; i < n; ++i) {
      FactBank bank = base;
      bank.add(heads[i]);
      std::set<Violation> vs;
      for (const auto* w : relevant) add_violations(*w, bank, vs);
      ranked.emplace_back(cost_of(vs), i);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      int c = compare_cost(a.first, b.first);
      return c != 0 ? c < 0 : a.second < b.second;
    });
    std::vector<GAtom> sel;
    for (int k = 0; k < hi; ++k) {
      if (k >= lo && !cost_is_negative(ranked[k].first)) break;
      sel.push_back(heads[ranked[k].second]);
    }
    std::sort(sel.begin(), sel.end(),
              [](const GAtom& a, const GAtom& b) { return compare(a, b) < 0; });
    return sel;
  }

  // General path: enumerate every subset of allowed size.
  if (n > 16) throw std::runtime_error("aggregate candidate set too large to optimize");
  std::vector<GAtom> best;
  Cost best_cost;
  bool has_best = false;
  for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
    int k = std::popcount(mask);
    if (k < lo || k > hi) continue;
    FactBank bank = base;
    std::vector<GAtom> sel;
    sel.reserve(static_cast<size_t>(k));
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) {
        bank.add(heads[i]);
        sel.push_back(heads[i]);
      }
    std::set<Violation> vs;
    for (const auto* w : relevant) add_violations(*w, bank, vs);
    Cost c = cost_of(vs);
    if (!has_best || compare_cost(c, best_cost) < 0 ||
        (compare_cost(c, best_cost) == 0 && compare_selection(sel, best) < 0)) {
      best = std::move(sel);
      best_cost = std::move(c);
      has_best = true;
    }
  }
  return best;
}

}  // namespace

FactBank evaluate(const RuleSet& rs, const FactBank& features) {
  return evaluate(rs, features, EvalOptions{});
}

FactBank evaluate(const RuleSet& rs, const FactBank& features, const EvalOptions& opts) {
  FactBank bank = features;
  for (const auto& agg : rs.aggregates)
    for (const GAtom& a : select_subset(agg, rs.weaks, bank, opts.force_nonempty_choice))
      bank.add(a);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rs.rules) {
      std::vector<GAtom> adds;
      for_each_match(r.body, bank, [&](const Binding& b) {
        GAtom g = ground_atom(r.head, b);
        if (!bank.contains(g)) adds.push_back(g);
      });
      for (const GAtom& g : adds)
        if (!bank.contains(g)) {
          bank.add(g);
          changed = true;
        }
    }
  }
  return bank;
}

std::vector<GAtom> entailed_atoms(const RuleSet& rs, const FactBank& features,
                                  std::span<const int32_t> action_preds) {
  FactBank derived = evaluate(rs, features);
  std::vector<GAtom> out;
  for (int32_t pred : action_preds)
    for (const GAtom& a : derived.with_pred(pred))
      if (!features.contains(a)) out.push_back(a);
  std::sort(out.begin(), out.end(),
            [](const GAtom& a, const GAtom& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<int, std::int64_t> weak_cost(std::span<const WeakConstraint> weaks,
                                      const FactBank& facts) {
  std::set<Violation> vs;
  for (const WeakConstraint& w : weaks) add_violations(w, facts, vs);
  return cost_of(vs);
}

int compare_weak_cost(const std::map<int, std::int64_t>& a,
                      const std::map<int, std::int64_t>& b) {
  return compare_cost(a, b);
}

}  // namespace planwb::asp
