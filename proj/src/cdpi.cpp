#include "planwb/cdpi.hpp"

#include <algorithm>

#include "planwb/rule_eval.hpp"

namespace planwb {

using asp::FactBank;
using asp::GAtom;
using asp::make_atom;
using asp::RuleSet;
using asp::Symbols;
using asp::Term;

int32_t subject_pred(const Cdpi& e) {
  if (!e.inc.empty()) return e.inc.front().pred;
  if (!e.exc.empty()) return e.exc.front().pred;
  return -1;
}

namespace {

void sort_canonical(std::vector<GAtom>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const GAtom& a, const GAtom& b) { return asp::compare(a, b) < 0; });
}

std::vector<ActionPredicate> finish(std::vector<ActionPredicate> preds) {
  for (auto& p : preds) sort_canonical(p.groundings);
  std::sort(preds.begin(), preds.end(), [](const ActionPredicate& a, const ActionPredicate& b) {
    return Symbols::name(a.pred) < Symbols::name(b.pred);
  });
  return preds;
}

// The unique rock co-located with the agent, read off the dist(R,0) feature.
std::optional<Term> colocated_rock(std::span<const GAtom> context) {
  const int32_t dist = Symbols::intern("dist");
  std::optional<Term> rock;
  for (const GAtom& g : context) {
    if (g.pred != dist || g.arity != 2) continue;
    if (g.arg[1].kind != Term::Int || g.arg[1].value != 0) continue;
    if (rock) return std::nullopt;  // ambiguous; never happens on legal maps
    rock = g.arg[0];
  }
  return rock;
}

}  // namespace

std::vector<ActionPredicate> rocksample_action_predicates(int rocks) {
  std::vector<ActionPredicate> preds;
  for (const char* m : {"north", "south", "east", "west"}) {
    preds.push_back({Symbols::intern(m), {make_atom(m)}});
  }
  ActionPredicate sample{Symbols::intern("sample"), {}};
  ActionPredicate check{Symbols::intern("check"), {}};
  for (int r = 1; r <= rocks; ++r) {
    sample.groundings.push_back(make_atom("sample", Term::integer(r)));
    check.groundings.push_back(make_atom("check", Term::integer(r)));
  }
  preds.push_back(std::move(sample));
  preds.push_back(std::move(check));
  return finish(std::move(preds));
}

std::vector<ActionPredicate> pocman_action_predicates() {
  ActionPredicate move{Symbols::intern("move"), {}};
  for (const char* d : {"north", "south", "east", "west"}) {
    move.groundings.push_back(make_atom("move", Term::symbol(d)));
  }
  std::vector<ActionPredicate> preds;
  preds.push_back(std::move(move));
  return finish(std::move(preds));
}

std::optional<GAtom> lift_action(const GAtom& executed, std::span<const ActionPredicate> space,
                                 std::span<const GAtom> context) {
  for (const auto& ap : space) {
    for (const GAtom& g : ap.groundings) {
      if (g == executed) return g;
    }
  }
  if (executed.arity != 0) return std::nullopt;
  for (const auto& ap : space) {
    if (ap.pred != executed.pred) continue;
    std::optional<Term> rock = colocated_rock(context);
    if (!rock) return std::nullopt;
    GAtom g;
    g.pred = ap.pred;
    g.arity = 1;
    g.arg[0] = *rock;
    for (const GAtom& known : ap.groundings) {
      if (known == g) return g;
    }
    return std::nullopt;
  }
  for (const auto& ap : space) {
    for (const GAtom& g : ap.groundings) {
      if (g.arity == 1 && g.arg[0].kind == Term::Sym && g.arg[0].value == executed.pred) return g;
    }
  }
  return std::nullopt;
}

TraceFilter filter_traces(const std::vector<EpisodeTrace>& traces) {
  TraceFilter out;
  if (traces.empty()) return out;
  double sum = 0.0;
  for (const auto& tr : traces) sum += tr.total_return;
  out.mean_return = sum / static_cast<double>(traces.size());
  for (const auto& tr : traces) {
    if (tr.total_return > out.mean_return) out.kept.push_back(tr);
  }
  if (out.kept.empty()) {
    out.kept = traces;
    out.kept_all_equal = true;
  }
  return out;
}

EpisodeTrace annotate_targets(const EpisodeTrace& trace) {
  const int32_t sample = Symbols::intern("sample");
  EpisodeTrace out = trace;
  size_t run_start = 0;
  for (size_t i = 0; i < out.steps.size(); ++i) {
    const TraceStep& step = out.steps[i];
    if (step.action.pred != sample) continue;
    std::optional<Term> rock = step.action.arity == 1
                                   ? std::optional<Term>(step.action.arg[0])
                                   : colocated_rock(step.features.atoms());
    if (!rock) continue;
    GAtom target = GAtom{Symbols::intern("target"), 1, {*rock}};
    for (size_t j = run_start; j <= i; ++j) out.steps[j].features.add(target);
    run_start = i + 1;
  }
  return out;
}

std::vector<Cdpi> make_cdpis(const TraceStep& step, std::span<const ActionPredicate> space) {
  std::vector<Cdpi> out;
  std::optional<GAtom> executed = lift_action(step.action, space, step.features.atoms());
  if (!executed) return out;

  Cdpi positive;
  positive.inc.push_back(*executed);
  for (const auto& ap : space) {
    if (ap.pred != executed->pred) continue;
    for (const GAtom& g : ap.groundings) {
      if (!(g == *executed)) positive.exc.push_back(g);
    }
  }
  positive.context = step.features.atoms();
  out.push_back(std::move(positive));

  for (const auto& ap : space) {
    if (ap.pred == executed->pred) continue;
    Cdpi negative;
    negative.exc = ap.groundings;
    negative.context = step.features.atoms();
    out.push_back(std::move(negative));
  }
  return out;
}

std::vector<Cdpi> make_cdpis(const std::vector<EpisodeTrace>& traces,
                             std::span<const ActionPredicate> space) {
  std::vector<Cdpi> out;
  int group = 0;
  for (const auto& tr : traces) {
    for (const auto& step : tr.steps) {
      std::vector<Cdpi> batch = make_cdpis(step, space);
      for (auto& e : batch) {
        e.group = group;
        out.push_back(std::move(e));
      }
      ++group;
    }
  }
  return out;
}

RuleSet flatten_choice_branches(const RuleSet& rules) {
  RuleSet flat;
  flat.rules = rules.rules;
  for (const auto& agg : rules.aggregates) {
    for (const auto& br : agg.branches) {
      flat.rules.push_back(asp::NormalRule{br.head, br.body, br.var_names});
    }
  }
  return flat;
}

std::vector<Cdpi> make_target_cdpis(const std::vector<EpisodeTrace>& annotated, int rocks) {
  const int32_t target_pred = Symbols::intern("target");
  std::vector<GAtom> all;
  for (int r = 1; r <= rocks; ++r) all.push_back(GAtom{target_pred, 1, {Term::integer(r)}});

  std::vector<Cdpi> out;
  int group = 0;
  for (const auto& tr : annotated) {
    for (const auto& step : tr.steps) {
      std::vector<GAtom> labels(step.features.with_pred(target_pred).begin(),
                                step.features.with_pred(target_pred).end());
      Cdpi e;
      e.group = group++;
      for (const GAtom& g : step.features.atoms()) {
        if (g.pred != target_pred) e.context.push_back(g);
      }
      if (labels.size() == 1) {
        e.inc = labels;
        for (const GAtom& g : all) {
          if (!(g == labels.front())) e.exc.push_back(g);
        }
      } else {
        e.exc = all;
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Cdpi> make_ordered_cdpis(const RuleSet& rules, const std::vector<EpisodeTrace>& traces,
                                     std::span<const ActionPredicate> space) {
  const int32_t target_pred = Symbols::intern("target");
  RuleSet flat = flatten_choice_branches(rules);

  std::vector<int32_t> heads;
  for (const auto& r : flat.rules) heads.push_back(r.head.pred);
  std::sort(heads.begin(), heads.end(), [](int32_t a, int32_t b) {
    return Symbols::name(a) < Symbols::name(b);
  });
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());

  std::vector<Cdpi> out;
  int group = 0;
  for (const auto& tr : traces) {
    for (const auto& step : tr.steps) {
      // Target annotations are labels, not inputs: evaluation runs without
      // them so every candidate the rules stand behind is rule-derived.
      FactBank env;
      for (const GAtom& g : step.features.atoms()) {
        if (g.pred != target_pred) env.add(g);
      }
      FactBank derived = asp::evaluate(flat, env);
      std::optional<GAtom> lifted = lift_action(step.action, space, step.features.atoms());
      for (int32_t pred : heads) {
        std::optional<GAtom> realized;
        if (lifted && lifted->pred == pred) {
          realized = *lifted;
        } else if (pred == target_pred) {
          auto labels = step.features.with_pred(target_pred);
          if (labels.size() == 1) realized = labels.front();
        }
        if (!realized) continue;

        std::vector<GAtom> candidates;
        for (const GAtom& g : derived.with_pred(pred)) {
          if (!env.contains(g)) candidates.push_back(g);
        }
        sort_canonical(candidates);
        if (std::find(candidates.begin(), candidates.end(), *realized) == candidates.end()) {
          continue;
        }

        auto emit = [&](const GAtom& g, int rank) {
          Cdpi e;
          e.inc.push_back(g);
          e.context = pred == target_pred ? env.atoms() : step.features.atoms();
          e.rank = rank;
          e.group = group;
          out.push_back(std::move(e));
        };
        emit(*realized, 2);
        for (const GAtom& g : candidates) {
          if (!(g == *realized)) emit(g, 1);
        }
      }
      ++group;
    }
  }
  return out;
}

}  // namespace planwb
