#pragma once

#include <optional>

#include "planwb/rule_eval.hpp"

namespace planwb::asp {

// Maps ground atoms derived by the rule engine onto a solver's integer action
// space. `actions[i]` is the canonical atom of action i; extra head shapes are
// routed through aliases, e.g. rocksample's sample(R) -> the single `sample`
// action (predicate alias) and 0-ary `exit` -> the `east` action (atom alias),
// or pocman's move(north) -> action 0 (atom alias).
struct ActionSpace {
  std::vector<GAtom> actions;
  std::vector<std::pair<GAtom, int>> atom_aliases;
  std::vector<std::pair<int32_t, int>> pred_aliases;

  std::optional<int> index_of(const GAtom& a) const;
  // Distinct predicate ids across actions and aliases, the "action predicates"
  // the rule engine should report entailment for.
  std::vector<int32_t> preds() const;
};

enum class GuideMode : uint8_t { Soft, Strict };

// Solver action indices entailed by the rules under the given features,
// sorted and deduplicated (aliases collapse onto their target index).
std::vector<int> entailed_actions(const RuleSet& rules, const FactBank& features,
                                  const ActionSpace& space);

// Rollout sampling distribution over the action space. An entailed action
// weighs its rules' coverage percentage; a non-entailed action weighs the
// minimum coverage across all actions (Soft) or zero (Strict). Weights are
// normalized to sum 1; Strict with nothing entailed falls back to uniform.
// Actions whose predicate has no coverage entry default to the minimum of the
// provided entries; a rule set with no coverage data weighs all rules equally.
std::vector<double> rollout_weights(const RuleSet& rules, const FactBank& features,
                                    const ActionSpace& space, GuideMode mode);

}  // namespace planwb::asp
