#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "planwb/atoms.hpp"
#include "planwb/rules.hpp"
#include "planwb/trace.hpp"

namespace planwb {

// One inductive-learning example: the atoms the learned rules must derive
// (inc), the atoms they must not derive (exc), and the feature snapshot the
// decision was made under. `rank` is set on preference examples (higher is
// better); `group` ties every example generated from the same trace step
// together so per-step accounting and export ids stay stable.
struct Cdpi {
  std::vector<asp::GAtom> inc;
  std::vector<asp::GAtom> exc;
  std::vector<asp::GAtom> context;
  std::optional<int> rank;
  int group = -1;
};

// The predicate an example constrains: the inclusion's predicate when the
// inclusion is non-empty, otherwise the exclusions'.
int32_t subject_pred(const Cdpi& e);

// One action predicate together with every ground instance it can take; the
// list as a whole is the ground action space examples quantify over.
struct ActionPredicate {
  int32_t pred = -1;
  std::vector<asp::GAtom> groundings;
};

// Registries in canonical (name-sorted) predicate order. Rocksample uses
// check/1 and sample/1 over rock indices 1..rocks plus the four 0-ary moves;
// pocman uses move/1 over the four direction symbols.
std::vector<ActionPredicate> rocksample_action_predicates(int rocks);
std::vector<ActionPredicate> pocman_action_predicates();

// Resolves an executed trace atom to its ground form in `space`:
//   - an atom that already is a grounding maps to itself;
//   - a 0-ary atom whose predicate grounds over objects (rocksample `sample`)
//     maps via the co-located rock, i.e. the unique dist(R,0) in `context`;
//   - a 0-ary atom whose name appears as the symbol argument of a grounding
//     (pocman `north` vs. move(north)) maps to that grounding.
// Returns nullopt when no resolution exists (e.g. sampling on bare ground).
std::optional<asp::GAtom> lift_action(const asp::GAtom& executed,
                                      std::span<const ActionPredicate> space,
                                      std::span<const asp::GAtom> context);

// Return-above-average trace selection. `kept_all_equal` flags the
// degenerate fallback where every return equals the mean and all traces are
// kept.
struct TraceFilter {
  std::vector<EpisodeTrace> kept;
  double mean_return = 0.0;
  bool kept_all_equal = false;
};
TraceFilter filter_traces(const std::vector<EpisodeTrace>& traces);

// Rocksample target annotation: every maximal run of steps ending in a
// resolvable sample(R) gains target(R) in each step's features; steps after
// the last sample keep their features unchanged. Sample steps with no
// co-located rock neither receive an atom nor close a run.
EpisodeTrace annotate_targets(const EpisodeTrace& trace);

// Lifts one executed step into examples: a positive one holding the executed
// grounding with its predicate's remaining groundings excluded, plus one
// all-excluded example per other action predicate. Context is the step's
// feature set throughout. Steps whose action cannot be lifted yield nothing.
std::vector<Cdpi> make_cdpis(const TraceStep& step,
                             std::span<const ActionPredicate> space);

// make_cdpis over every step of every trace, with `group` numbering steps
// consecutively across the whole batch.
std::vector<Cdpi> make_cdpis(const std::vector<EpisodeTrace>& traces,
                             std::span<const ActionPredicate> space);

// Examples for the selection-rule task on annotated rocksample traces: each
// step with exactly one target(R) label yields ⟨{target(R)}, other targets⟩,
// label-free steps yield an all-excluded example, and contexts carry the
// environmental features only (labels are what is being learned).
std::vector<Cdpi> make_target_cdpis(const std::vector<EpisodeTrace>& annotated, int rocks);

// Rewrites choice rules as one plain rule per branch and drops weak
// constraints, so evaluation derives every candidate instead of a
// cost-minimal selection.
asp::RuleSet flatten_choice_branches(const asp::RuleSet& rules);

// Ranked preference examples: per step, every candidate the rules derive for
// one of their head predicates becomes ⟨{atom}, ∅⟩ over the step context,
// ranked 2 when it is the atom the trace actually realized (the executed
// action, or the annotated target for the target predicate) and 1 otherwise.
std::vector<Cdpi> make_ordered_cdpis(const asp::RuleSet& rules,
                                     const std::vector<EpisodeTrace>& traces,
                                     std::span<const ActionPredicate> space);

}  // namespace planwb
