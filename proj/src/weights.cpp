#include <algorithm>

#include "planwb/weights.hpp"

namespace planwb::asp {

std::optional<int> ActionSpace::index_of(const GAtom& a) const {
  for (size_t i = 0; i < actions.size(); ++i)
    if (actions[i] == a) return static_cast<int>(i);
  for (const auto& [atom, idx] : atom_aliases)
    if (atom == a) return idx;
  for (const auto& [pred, idx] : pred_aliases)
    if (pred == a.pred) return idx;
  return std::nullopt;
}

std::vector<int32_t> ActionSpace::preds() const {
  std::vector<int32_t> out;
  for (const auto& a : actions) out.push_back(a.pred);
  for (const auto& [atom, idx] : atom_aliases) {
    (void)idx;
    out.push_back(atom.pred);
  }
  for (const auto& [pred, idx] : pred_aliases) {
    (void)idx;
    out.push_back(pred);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> entailed_actions(const RuleSet& rules, const FactBank& features,
                                  const ActionSpace& space) {
  auto preds = space.preds();
  std::vector<int> out;
  for (const GAtom& a : entailed_atoms(rules, features, preds))
    if (auto idx = space.index_of(a)) out.push_back(*idx);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Coverage for action index i: the best coverage entry among the predicates
// that map onto i (its own atom plus aliases); fallback handled by caller.
double coverage_for(const RuleSet& rules, const ActionSpace& space, int i,
                    double fallback) {
  double best = -1.0;
  auto consider = [&](int32_t pred) {
    if (auto cov = rules.coverage_of(pred)) best = std::max(best, *cov);
  };
  consider(space.actions[static_cast<size_t>(i)].pred);
  for (const auto& [atom, idx] : space.atom_aliases)
    if (idx == i) consider(atom.pred);
  for (const auto& [pred, idx] : space.pred_aliases)
    if (idx == i) consider(pred);
  return best >= 0 ? best : fallback;
}

}  // namespace

std::vector<double> rollout_weights(const RuleSet& rules, const FactBank& features,
                                    const ActionSpace& space, GuideMode mode) {
  const size_t n = space.actions.size();
  std::vector<bool> entailed(n, false);
  for (int i : entailed_actions(rules, features, space))
    entailed[static_cast<size_t>(i)] = true;

  double cov_min = -1.0;
  for (const auto& [pred, pct] : rules.coverage) {
    (void)pred;
    cov_min = cov_min < 0 ? pct : std::min(cov_min, pct);
  }
  if (cov_min < 0) cov_min = 100.0;  // no coverage data: every rule weighs alike

  std::vector<double> w(n, 0.0);
  bool any = false;
  for (size_t i = 0; i < n; ++i) {
    if (entailed[i]) {
      w[i] = coverage_for(rules, space, static_cast<int>(i), cov_min);
      any = true;
    } else {
      w[i] = mode == GuideMode::Soft ? cov_min : 0.0;
    }
  }
  if (mode == GuideMode::Strict && !any) std::fill(w.begin(), w.end(), 1.0);

  double sum = 0.0;
  for (double v : w) sum += v;
  if (sum <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
    return w;
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace planwb::asp
