#include "planwb/induction.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "planwb/rule_eval.hpp"
#include "planwb/text.hpp"

namespace planwb {

using asp::AggBranch;
using asp::AggregateRule;
using asp::Arg;
using asp::AtomPat;
using asp::BodyLit;
using asp::CmpOp;
using asp::FactBank;
using asp::GAtom;
using asp::NormalRule;
using asp::RuleSet;
using asp::Symbols;
using asp::Term;
using asp::WeakConstraint;

namespace {

[[noreturn]] void bias_error(const std::string& path, int line, const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> toks;
  for (const std::string& t : split(line, ' ')) {
    if (!trim(t).empty()) toks.emplace_back(trim(t));
  }
  return toks;
}

std::vector<int> parse_grid(const std::vector<std::string>& toks, size_t from,
                            const std::string& path, int line) {
  std::vector<int> grid;
  for (size_t i = from; i < toks.size(); ++i) {
    size_t dots = toks[i].find("..");
    try {
      if (dots != std::string::npos) {
        int lo = std::stoi(toks[i].substr(0, dots));
        int hi = std::stoi(toks[i].substr(dots + 2));
        if (lo > hi) bias_error(path, line, "empty range " + toks[i]);
        for (int v = lo; v <= hi; ++v) grid.push_back(v);
      } else {
        grid.push_back(std::stoi(toks[i]));
      }
    } catch (const std::invalid_argument&) {
      bias_error(path, line, "bad grid value '" + toks[i] + "'");
    }
  }
  if (grid.empty()) bias_error(path, line, "grid directive without values");
  return grid;
}

bool has_numeric_slot(const BodyTemplate& t) {
  return std::any_of(t.slots.begin(), t.slots.end(),
                     [](SlotKind k) { return k != SlotKind::Object; });
}

bool has_object_slot(const BodyTemplate& t) {
  return std::any_of(t.slots.begin(), t.slots.end(),
                     [](SlotKind k) { return k == SlotKind::Object; });
}

// Derives the ground heads a single candidate rule fires on a feature bank.
// Bodies from enumerate_space list positive atoms, then negated atoms, then
// comparisons, so a left-to-right walk always sees variables bound in time.
class RuleFirer {
 public:
  RuleFirer(const NormalRule& r, const FactBank& bank) : r_(r), bank_(bank) {
    bound_.assign(r.var_names.empty() ? 1 : r.var_names.size(), Term{});
    has_.assign(bound_.size(), false);
  }

  void collect(std::vector<GAtom>& out) {
    out_ = &out;
    walk(0);
  }

 private:
  void walk(size_t li) {
    if (li == r_.body.size()) {
      GAtom g;
      g.pred = r_.head.pred;
      g.arity = r_.head.arity;
      for (int i = 0; i < r_.head.arity; ++i) g.arg[i] = ground(r_.head.arg[i]);
      if (std::find(out_->begin(), out_->end(), g) == out_->end()) out_->push_back(g);
      return;
    }
    const BodyLit& lit = r_.body[li];
    if (lit.kind == BodyLit::Cmp) {
      const Term& t = bound_[lit.cmp_var];
      if (!has_[lit.cmp_var] || t.kind != Term::Int) return;
      bool ok = lit.op == CmpOp::Le   ? t.value <= lit.rhs
                : lit.op == CmpOp::Ge ? t.value >= lit.rhs
                                      : t.value == lit.rhs;
      if (ok) walk(li + 1);
      return;
    }
    if (lit.kind == BodyLit::Neg) {
      GAtom g;
      g.pred = lit.atom.pred;
      g.arity = lit.atom.arity;
      for (int i = 0; i < lit.atom.arity; ++i) g.arg[i] = ground(lit.atom.arg[i]);
      if (!bank_.contains(g)) walk(li + 1);
      return;
    }
    for (const GAtom& g : bank_.with_pred(lit.atom.pred)) {
      if (g.arity != lit.atom.arity) continue;
      std::vector<uint8_t> fresh;
      bool ok = true;
      for (int i = 0; i < g.arity && ok; ++i) {
        const Arg& a = lit.atom.arg[i];
        if (a.kind == Arg::Cst) {
          ok = a.cst == g.arg[i];
        } else if (has_[a.var]) {
          ok = bound_[a.var] == g.arg[i];
        } else {
          bound_[a.var] = g.arg[i];
          has_[a.var] = true;
          fresh.push_back(a.var);
        }
      }
      if (ok) walk(li + 1);
      for (uint8_t v : fresh) has_[v] = false;
    }
  }

  Term ground(const Arg& a) const { return a.kind == Arg::Cst ? a.cst : bound_[a.var]; }

  const NormalRule& r_;
  const FactBank& bank_;
  std::vector<Term> bound_;
  std::vector<uint8_t> has_;
  std::vector<GAtom>* out_ = nullptr;
};

std::string context_key(const std::vector<GAtom>& ctx) {
  std::vector<std::string> names;
  names.reserve(ctx.size());
  for (const GAtom& g : ctx) names.push_back(asp::to_string(g));
  std::sort(names.begin(), names.end());
  std::string key;
  for (const auto& n : names) {
    key += n;
    key += ';';
  }
  return key;
}

FactBank bank_of(const std::vector<GAtom>& ctx) {
  FactBank b;
  for (const GAtom& g : ctx) b.add(g);
  return b;
}

std::set<std::string> literal_set(const std::vector<BodyLit>& body,
                                  const std::vector<std::string>& var_names) {
  std::set<std::string> out;
  for (const BodyLit& lit : body) out.insert(asp::to_string(lit, var_names));
  return out;
}

double set_distance(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  size_t inter = 0;
  for (const auto& s : a) inter += b.count(s);
  size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(uni - inter) / static_cast<double>(uni);
}

}  // namespace

std::vector<ModeBias> load_bias(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bias file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();

  ModeBias shared;
  std::vector<std::pair<std::string, int>> heads;
  bool saw_value_grid = false;
  bool saw_distance_grid = false;

  int line_no = 0;
  for (const std::string& raw : split(ss.str(), '\n')) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> toks = tokens_of(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "object_var" && toks.size() == 2) {
      shared.object_var = toks[1];
    } else if (kw == "head" && toks.size() == 3) {
      int arity = std::stoi(toks[2]);
      if (arity < 0 || arity > 1) bias_error(path, line_no, "head arity must be 0 or 1");
      heads.emplace_back(toks[1], arity);
    } else if (kw == "body" && toks.size() >= 2) {
      BodyTemplate t;
      size_t at = 1;
      if (toks[1] == "not") {
        t.negated = true;
        at = 2;
        if (toks.size() < 3) bias_error(path, line_no, "negated body without a predicate");
      }
      t.pred = toks[at];
      for (size_t i = at + 1; i < toks.size(); ++i) {
        if (toks[i] == "object") {
          t.slots.push_back(SlotKind::Object);
        } else if (toks[i] == "value") {
          t.slots.push_back(SlotKind::Value);
        } else if (toks[i] == "distance") {
          t.slots.push_back(SlotKind::Distance);
        } else {
          bias_error(path, line_no, "unknown slot kind '" + toks[i] + "'");
        }
      }
      if (t.negated && has_numeric_slot(t)) {
        bias_error(path, line_no, "negated template '" + t.pred + "' may not carry numeric slots");
      }
      shared.body.push_back(std::move(t));
    } else if (kw == "value_grid") {
      shared.value_grid = parse_grid(toks, 1, path, line_no);
      saw_value_grid = true;
    } else if (kw == "distance_grid") {
      shared.distance_grid = parse_grid(toks, 1, path, line_no);
      saw_distance_grid = true;
    } else if (kw == "max_features" && toks.size() == 2) {
      shared.max_features = std::stoi(toks[1]);
    } else if (kw == "max_numeric_atoms" && toks.size() == 2) {
      shared.max_numeric_atoms = std::stoi(toks[1]);
    } else if (kw == "max_len" && toks.size() == 2) {
      shared.max_len_normal = std::stoi(toks[1]);
    } else if (kw == "max_len_weak" && toks.size() == 2) {
      shared.max_len_weak = std::stoi(toks[1]);
    } else {
      bias_error(path, line_no, "unrecognized directive '" + kw + "'");
    }
  }
  if (heads.empty()) bias_error(path, line_no, "bias file declares no head predicate");
  if (!saw_value_grid) {
    for (int v = 0; v <= 100; v += 10) shared.value_grid.push_back(v);
  }
  if (!saw_distance_grid) {
    for (int v = -8; v <= 8; ++v) shared.distance_grid.push_back(v);
  }

  std::vector<ModeBias> out;
  for (const auto& [pred, arity] : heads) {
    ModeBias b = shared;
    b.head_pred = pred;
    b.head_arity = arity;
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<NormalRule> enumerate_space(const ModeBias& bias) {
  if (bias.value_grid.empty() || bias.distance_grid.empty()) {
    throw std::invalid_argument("bias for head '" + bias.head_pred + "' has an empty grid");
  }
  if (bias.max_len_normal < 1) {
    throw std::invalid_argument("bias for head '" + bias.head_pred + "' has max_len < 1");
  }

  std::vector<const BodyTemplate*> usable;
  for (const BodyTemplate& t : bias.body) {
    if (t.pred != bias.head_pred) usable.push_back(&t);
  }

  std::vector<NormalRule> out;
  const int32_t head_pred = Symbols::intern(bias.head_pred);
  const int n = static_cast<int>(usable.size());
  const int max_k = std::min(bias.max_features, n);

  for (int k = 1; k <= max_k; ++k) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      // --- geometry of this template subset -----------------------------
      bool pos_object = false;
      bool neg_needs_object = false;
      int numeric_atoms = 0;
      int cmp_count = 0;
      for (int i : idx) {
        const BodyTemplate& t = *usable[static_cast<size_t>(i)];
        if (!t.negated && has_object_slot(t)) pos_object = true;
        if (t.negated && has_object_slot(t)) neg_needs_object = true;
        if (has_numeric_slot(t)) ++numeric_atoms;
        for (SlotKind s : t.slots) cmp_count += s != SlotKind::Object;
      }
      bool safe = !(bias.head_arity == 1 && !pos_object) && !(neg_needs_object && !pos_object);
      if (safe && numeric_atoms <= bias.max_numeric_atoms &&
          k + cmp_count <= bias.max_len_normal) {
        // --- variables and literal skeleton ------------------------------
        NormalRule proto;
        proto.head.pred = head_pred;
        proto.head.arity = static_cast<uint8_t>(bias.head_arity);
        if (bias.head_arity == 1) proto.head.arg[0] = Arg::variable(0);
        proto.var_names.push_back(bias.object_var);

        struct NumSlot {
          uint8_t var;
          SlotKind kind;
        };
        std::vector<NumSlot> nums;
        int v_count = 0;
        int d_count = 0;
        std::vector<BodyLit> positives;
        std::vector<BodyLit> negatives;
        for (int i : idx) {
          const BodyTemplate& t = *usable[static_cast<size_t>(i)];
          BodyLit lit;
          lit.kind = t.negated ? BodyLit::Neg : BodyLit::Pos;
          lit.atom.pred = Symbols::intern(t.pred);
          lit.atom.arity = static_cast<uint8_t>(t.slots.size());
          for (size_t si = 0; si < t.slots.size(); ++si) {
            if (t.slots[si] == SlotKind::Object) {
              lit.atom.arg[si] = Arg::variable(0);
            } else {
              auto var = static_cast<uint8_t>(proto.var_names.size());
              if (t.slots[si] == SlotKind::Value) {
                ++v_count;
                proto.var_names.push_back(v_count == 1 ? "V" : "V" + std::to_string(v_count));
              } else {
                ++d_count;
                proto.var_names.push_back(d_count == 1 ? "D" : "D" + std::to_string(d_count));
              }
              lit.atom.arg[si] = Arg::variable(var);
              nums.push_back({var, t.slots[si]});
            }
          }
          (t.negated ? negatives : positives).push_back(lit);
        }
        proto.body = positives;
        proto.body.insert(proto.body.end(), negatives.begin(), negatives.end());

        // --- comparison odometer, last numeric slot fastest --------------
        std::vector<int> pick(nums.size(), 0);
        auto options = [&](size_t s) {
          const auto& grid =
              nums[s].kind == SlotKind::Value ? bias.value_grid : bias.distance_grid;
          return 2 * static_cast<int>(grid.size());
        };
        while (true) {
          NormalRule r = proto;
          for (size_t s = 0; s < nums.size(); ++s) {
            const auto& grid =
                nums[s].kind == SlotKind::Value ? bias.value_grid : bias.distance_grid;
            int o = pick[s];
            BodyLit cmp;
            cmp.kind = BodyLit::Cmp;
            cmp.cmp_var = nums[s].var;
            cmp.op = o < static_cast<int>(grid.size()) ? CmpOp::Le : CmpOp::Ge;
            cmp.rhs = grid[static_cast<size_t>(o) % grid.size()];
            r.body.push_back(cmp);
          }
          out.push_back(std::move(r));
          if (nums.empty()) break;
          size_t s = nums.size();
          while (s > 0) {
            --s;
            if (++pick[s] < options(s)) break;
            pick[s] = 0;
            if (s == 0) goto odometer_done;
          }
          continue;
        odometer_done:
          break;
        }
      }
      // --- next index combination ----------------------------------------
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) {
        idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
      }
    }
  }
  return out;
}

CoverageReport coverage_on(const RuleSet& rules, std::span<const Cdpi> cdpis, int32_t pred) {
  CoverageReport rep;
  asp::EvalOptions opts;
  opts.force_nonempty_choice = false;
  std::unordered_map<std::string, FactBank> cache;
  for (const Cdpi& e : cdpis) {
    if (subject_pred(e) != pred) continue;
    ++rep.total;
    std::string key = context_key(e.context);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, asp::evaluate(rules, bank_of(e.context), opts)).first;
    }
    const FactBank& derived = it->second;
    bool ok = true;
    for (const GAtom& g : e.inc) ok = ok && derived.contains(g);
    for (const GAtom& g : e.exc) ok = ok && !derived.contains(g);
    rep.covered += ok;
  }
  return rep;
}

InductionResult induce_rules(std::span<const Cdpi> cdpis, const ModeBias& bias) {
  const int32_t head = Symbols::intern(bias.head_pred);

  std::vector<const Cdpi*> examples;
  for (const Cdpi& e : cdpis) {
    if (subject_pred(e) == head) examples.push_back(&e);
  }
  if (examples.empty()) {
    throw std::invalid_argument("no examples mention head predicate '" + bias.head_pred + "'");
  }

  std::vector<NormalRule> cands = enumerate_space(bias);
  if (cands.empty()) {
    throw std::invalid_argument("bias for head '" + bias.head_pred +
                                "' yields an empty candidate space");
  }

  // Unique contexts; every candidate is fired once per context, not per
  // example.
  std::unordered_map<std::string, int> ctx_ids;
  std::vector<FactBank> banks;
  std::vector<int> ex_ctx(examples.size());
  std::vector<int> positives;  // indices into `examples`
  for (size_t i = 0; i < examples.size(); ++i) {
    std::string key = context_key(examples[i]->context);
    auto [it, fresh] = ctx_ids.try_emplace(key, static_cast<int>(banks.size()));
    if (fresh) banks.push_back(bank_of(examples[i]->context));
    ex_ctx[i] = it->second;
    if (!examples[i]->inc.empty()) positives.push_back(static_cast<int>(i));
  }

  const size_t words = (positives.size() + 63) / 64;
  struct Scored {
    int idx;
    int atoms;
    std::vector<uint64_t> mask;
  };
  std::vector<Scored> usable;
  std::vector<std::vector<GAtom>> fired(banks.size());
  for (size_t ci = 0; ci < cands.size(); ++ci) {
    for (size_t u = 0; u < banks.size(); ++u) {
      fired[u].clear();
      RuleFirer(cands[ci], banks[u]).collect(fired[u]);
    }
    bool admissible = true;
    for (size_t i = 0; i < examples.size() && admissible; ++i) {
      for (const GAtom& bad : examples[i]->exc) {
        const auto& f = fired[static_cast<size_t>(ex_ctx[i])];
        if (std::find(f.begin(), f.end(), bad) != f.end()) {
          admissible = false;
          break;
        }
      }
    }
    if (!admissible) continue;
    std::vector<uint64_t> mask(words, 0);
    bool any = false;
    for (size_t pi = 0; pi < positives.size(); ++pi) {
      const Cdpi& e = *examples[static_cast<size_t>(positives[pi])];
      const auto& f = fired[static_cast<size_t>(ex_ctx[static_cast<size_t>(positives[pi])])];
      bool all_inc = !e.inc.empty();
      for (const GAtom& g : e.inc) {
        all_inc = all_inc && std::find(f.begin(), f.end(), g) != f.end();
      }
      if (all_inc) {
        mask[pi / 64] |= uint64_t{1} << (pi % 64);
        any = true;
      }
    }
    if (!any) continue;
    int atoms = 0;
    for (const BodyLit& lit : cands[ci].body) atoms += lit.kind != BodyLit::Cmp;
    usable.push_back({static_cast<int>(ci), atoms, std::move(mask)});
  }

  InductionResult result;
  std::vector<uint64_t> remaining(words, ~uint64_t{0});
  if (!positives.empty() && positives.size() % 64 != 0) {
    remaining[words - 1] = (uint64_t{1} << (positives.size() % 64)) - 1;
  }
  if (positives.empty()) remaining.assign(words, 0);

  while (true) {
    int best = -1;
    int best_gain = 0;
    for (size_t s = 0; s < usable.size(); ++s) {
      int gain = 0;
      for (size_t w = 0; w < words; ++w) {
        gain += std::popcount(usable[s].mask[w] & remaining[w]);
      }
      if (gain == 0) continue;
      if (best < 0 || gain > best_gain ||
          (gain == best_gain && usable[s].atoms < usable[static_cast<size_t>(best)].atoms)) {
        best = static_cast<int>(s);
        best_gain = gain;
      }
    }
    if (best < 0) break;
    const Scored& pickd = usable[static_cast<size_t>(best)];
    for (size_t w = 0; w < words; ++w) remaining[w] &= ~pickd.mask[w];
    result.rules.rules.push_back(cands[static_cast<size_t>(pickd.idx)]);
  }

  result.coverage = coverage_on(result.rules, cdpis, head);
  result.uncovered = result.coverage.total - result.coverage.covered;
  result.rules.coverage.emplace_back(head, result.coverage.percent());
  return result;
}

std::vector<WeakConstraint> induce_weak_constraints(std::span<const Cdpi> ordered,
                                                    const ModeBias& bias) {
  const int32_t head = Symbols::intern(bias.head_pred);

  struct Group {
    FactBank exec;               // context plus the top-ranked atom
    std::vector<FactBank> alts;  // context plus one alternative each
  };
  std::unordered_map<int, std::pair<std::vector<const Cdpi*>, const Cdpi*>> raw;
  for (const Cdpi& e : ordered) {
    if (e.inc.size() != 1 || e.inc.front().pred != head || !e.rank) continue;
    auto& slot = raw[e.group];
    if (*e.rank >= 2) {
      slot.second = &e;
    } else {
      slot.first.push_back(&e);
    }
  }
  std::vector<Group> groups;
  for (const auto& [gid, slot] : raw) {
    if (!slot.second || slot.first.empty()) continue;
    Group g;
    g.exec = bank_of(slot.second->context);
    g.exec.add(slot.second->inc.front());
    for (const Cdpi* alt : slot.first) {
      g.alts.push_back(bank_of(alt->context));
      g.alts.back().add(alt->inc.front());
    }
    groups.push_back(std::move(g));
  }
  if (groups.empty()) return {};

  // --- candidate constraints ------------------------------------------------
  BodyLit head_lit;
  head_lit.kind = BodyLit::Pos;
  head_lit.atom.pred = head;
  head_lit.atom.arity = static_cast<uint8_t>(bias.head_arity);
  if (bias.head_arity == 1) head_lit.atom.arg[0] = Arg::variable(0);

  std::vector<WeakConstraint> cands;
  for (const BodyTemplate& t : bias.body) {
    if (t.pred == bias.head_pred) continue;
    WeakConstraint base;
    base.body.push_back(head_lit);
    BodyLit feat;
    feat.kind = t.negated ? BodyLit::Neg : BodyLit::Pos;
    feat.atom.pred = Symbols::intern(t.pred);
    feat.atom.arity = static_cast<uint8_t>(t.slots.size());
    base.var_names.push_back(bias.object_var);
    std::vector<uint8_t> numeric_vars;
    int v_count = 0;
    int d_count = 0;
    for (size_t si = 0; si < t.slots.size(); ++si) {
      if (t.slots[si] == SlotKind::Object) {
        feat.atom.arg[si] = Arg::variable(0);
      } else {
        auto var = static_cast<uint8_t>(base.var_names.size());
        if (t.slots[si] == SlotKind::Value) {
          ++v_count;
          base.var_names.push_back(v_count == 1 ? "V" : "V" + std::to_string(v_count));
        } else {
          ++d_count;
          base.var_names.push_back(d_count == 1 ? "D" : "D" + std::to_string(d_count));
        }
        feat.atom.arg[si] = Arg::variable(var);
        numeric_vars.push_back(var);
      }
    }
    base.body.push_back(feat);
    if (static_cast<int>(base.body.size()) > bias.max_len_weak) continue;

    for (uint8_t v : numeric_vars) {
      for (bool negated : {false, true}) {
        for (int level : {1, 2}) {
          WeakConstraint w = base;
          w.weight_is_var = true;
          w.weight_var = v;
          w.weight_negated = negated;
          w.level = level;
          if (bias.head_arity == 1) w.tuple.push_back(Arg::variable(0));
          w.tuple.push_back(Arg::variable(v));
          cands.push_back(std::move(w));
        }
      }
    }
    for (int c : {1, -1}) {
      for (int level : {1, 2}) {
        WeakConstraint w = base;
        w.weight_is_var = false;
        w.weight_const = c;
        w.level = level;
        if (bias.head_arity == 1) w.tuple.push_back(Arg::variable(0));
        cands.push_back(std::move(w));
      }
    }
  }
  if (cands.empty()) return {};

  auto score = [&](std::span<const WeakConstraint> ws) {
    int ok = 0;
    for (const Group& g : groups) {
      auto exec_cost = asp::weak_cost(ws, g.exec);
      bool strict = true;
      for (const FactBank& alt : g.alts) {
        if (asp::compare_weak_cost(exec_cost, asp::weak_cost(ws, alt)) >= 0) {
          strict = false;
          break;
        }
      }
      ok += strict;
    }
    return ok;
  };
  const int perfect = static_cast<int>(groups.size());

  int best_score = 0;
  std::vector<WeakConstraint> best;
  std::vector<std::pair<int, size_t>> singles;  // score, index
  for (size_t i = 0; i < cands.size(); ++i) {
    int s = score(std::span<const WeakConstraint>(&cands[i], 1));
    if (s == perfect) return {cands[i]};
    singles.emplace_back(s, i);
    if (s > best_score) {
      best_score = s;
      best = {cands[i]};
    }
  }

  // Pairs are drawn from the strongest singles to keep the search bounded;
  // order stays deterministic (score, then enumeration index).
  std::stable_sort(singles.begin(), singles.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const size_t cap = std::min<size_t>(singles.size(), 64);
  std::vector<size_t> pool;
  for (size_t i = 0; i < cap; ++i) pool.push_back(singles[i].second);
  std::sort(pool.begin(), pool.end());
  for (size_t a = 0; a < pool.size(); ++a) {
    for (size_t b = a + 1; b < pool.size(); ++b) {
      std::vector<WeakConstraint> pair = {cands[pool[a]], cands[pool[b]]};
      int s = score(pair);
      if (s == perfect) return pair;
      if (s > best_score) {
        best_score = s;
        best = pair;
      }
    }
  }
  if (best_score == 0) return {};
  return best;
}

AggregateRule wrap_choice(std::span<const NormalRule> rules, const std::string& upper_name) {
  AggregateRule agg;
  agg.lower = 0;
  agg.upper_name = upper_name;
  for (const NormalRule& r : rules) {
    agg.branches.push_back(AggBranch{r.head, r.body, r.var_names});
  }
  return agg;
}

double rule_distance(const NormalRule& a, const NormalRule& b) {
  return set_distance(literal_set(a.body, a.var_names), literal_set(b.body, b.var_names));
}

namespace {

std::set<std::string> action_literals(const RuleSet& rs, int32_t pred) {
  std::set<std::string> out;
  for (const NormalRule& r : rs.rules) {
    if (r.head.pred != pred) continue;
    for (const BodyLit& lit : r.body) out.insert(asp::to_string(lit, r.var_names));
  }
  for (const AggregateRule& agg : rs.aggregates) {
    for (const AggBranch& br : agg.branches) {
      if (br.head.pred != pred) continue;
      for (const BodyLit& lit : br.body) out.insert(asp::to_string(lit, br.var_names));
    }
  }
  return out;
}

}  // namespace

double action_distance(const RuleSet& a, const RuleSet& b, int32_t pred) {
  return set_distance(action_literals(a, pred), action_literals(b, pred));
}

double mean_action_distance(const RuleSet& a, const RuleSet& b) {
  std::set<std::string> names;
  for (const RuleSet* rs : {&a, &b}) {
    for (const NormalRule& r : rs->rules) names.insert(Symbols::name(r.head.pred));
    for (const AggregateRule& agg : rs->aggregates) {
      for (const AggBranch& br : agg.branches) names.insert(Symbols::name(br.head.pred));
    }
  }
  if (names.empty()) return 0.0;
  double sum = 0.0;
  for (const std::string& n : names) sum += action_distance(a, b, Symbols::intern(n));
  return sum / static_cast<double>(names.size());
}

}  // namespace planwb
