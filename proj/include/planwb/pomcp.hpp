#pragma once

#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "planwb/belief.hpp"
#include "planwb/guides.hpp"
#include "planwb/pomdp.hpp"

namespace planwb {

// How heuristics participate in the search:
//   Off        plain UCT, uniform rollouts
//   UctOnly    entailment priors on tree nodes, uniform rollouts
//   Full       entailment priors + rollouts sampled from soft rule weights
//   FullStrict entailment priors + rollouts restricted to entailed actions
//   Preferred  handcrafted-baseline priors and rollouts
enum class PomcpMode : uint8_t { Off, UctOnly, Full, FullStrict, Preferred };

struct PomcpConfig {
  int simulations = 1024;
  double c = 20.0;  // exploration constant; also the prior value for entailed actions
  int rollout_depth = 90;
  int prior_visits = 10;
  PomcpMode mode = PomcpMode::Off;
};

inline double uct_score(double v_ha, double n_h, int n_ha, double c) {
  if (n_ha == 0) return std::numeric_limits<double>::infinity();
  return v_ha + c * std::sqrt(std::log(n_h) / n_ha);
}

// Monte Carlo tree search over action-observation histories. Each planning
// call builds a fresh tree from the current belief: every simulation draws a
// particle, walks the tree by UCT, appends at most one new node, estimates
// the leaf with a guided rollout, and backs the return up as a running mean.
// The executed action is the root child with the highest mean value.
template <class M, class Guide>
  requires GenerativeModel<M>
class PomcpPlanner {
 public:
  using State = typename M::State;

  PomcpPlanner(const M& model, Guide& guide, PomcpConfig cfg)
      : model_(model), guide_(guide), cfg_(cfg) {}

  int plan(const ParticleBelief<State>& belief, uint64_t seed) {
    guide_.begin_plan(belief);
    nodes_.clear();
    make_node(belief.at(0));
    for (int i = 0; i < cfg_.simulations; ++i) {
      Rng rng(derive(seed, 0x73696dull, static_cast<uint64_t>(i)));
      State particle = belief.sample(rng);
      simulate(0, particle, 0, rng);
    }
    const Node& root = nodes_[0];
    int best = 0;
    for (int a = 1; a < model_.action_count(); ++a)
      if (root.acts[static_cast<size_t>(a)].value > root.acts[static_cast<size_t>(best)].value)
        best = a;
    return best;
  }

  void on_executed(int action, Obs obs) { guide_.on_executed(action, obs); }

  struct ActionStat {
    double value = 0.0;
    int visits = 0;
    std::unordered_map<Obs, int> children;
  };
  struct Node {
    int visits = 0;
    std::vector<ActionStat> acts;
  };

  // Test hooks.
  const Node& root() const { return nodes_[0]; }
  size_t tree_size() const { return nodes_.size(); }
  Guide& guide() { return guide_; }
  const PomcpConfig& config() const { return cfg_; }

 private:
  int make_node(const State& s) {
    Node n;
    n.acts.resize(static_cast<size_t>(model_.action_count()));
    if (cfg_.mode != PomcpMode::Off) {
      std::span<const int> boosted = cfg_.mode == PomcpMode::Preferred ? guide_.preferred(s)
                                                                       : guide_.entailed(s);
      for (int a : boosted) {
        n.acts[static_cast<size_t>(a)].value = cfg_.c;
        n.acts[static_cast<size_t>(a)].visits = cfg_.prior_visits;
        n.visits += cfg_.prior_visits;
      }
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  double simulate(int node_id, State& s, int depth, Rng& rng) {
    int a = 0;
    {
      const Node& node = nodes_[static_cast<size_t>(node_id)];
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < model_.action_count(); ++i) {
        const ActionStat& st = node.acts[static_cast<size_t>(i)];
        double score = uct_score(st.value, node.visits, st.visits, cfg_.c);
        if (score > best) {
          best = score;
          a = i;
        }
      }
    }
    StepResult sr = model_.step(s, a, rng);
    double ret = sr.reward;
    if (!sr.terminal && depth + 1 < cfg_.rollout_depth) {
      auto& stat = nodes_[static_cast<size_t>(node_id)].acts[static_cast<size_t>(a)];
      auto it = stat.children.find(sr.obs);
      if (it != stat.children.end()) {
        ret += model_.discount() * simulate(it->second, s, depth + 1, rng);
      } else {
        int child = make_node(s);  // may reallocate nodes_
        nodes_[static_cast<size_t>(node_id)].acts[static_cast<size_t>(a)].children[sr.obs] = child;
        ret += model_.discount() * rollout(s, depth + 1, rng);
      }
    }
    Node& node = nodes_[static_cast<size_t>(node_id)];
    ActionStat& st = node.acts[static_cast<size_t>(a)];
    node.visits += 1;
    st.visits += 1;
    st.value += (ret - st.value) / st.visits;
    return ret;
  }

  WeightKind rollout_kind() const {
    switch (cfg_.mode) {
      case PomcpMode::Full: return WeightKind::Soft;
      case PomcpMode::FullStrict: return WeightKind::Strict;
      case PomcpMode::Preferred: return WeightKind::Preferred;
      default: return WeightKind::Uniform;
    }
  }

  double rollout(State& s, int depth, Rng& rng) {
    double total = 0.0, scale = 1.0;
    WeightKind kind = rollout_kind();
    for (int d = depth; d < cfg_.rollout_depth; ++d) {
      int a = rng.pick_weighted(guide_.weights(s, kind));
      StepResult sr = model_.step(s, a, rng);
      total += scale * sr.reward;
      scale *= model_.discount();
      if (sr.terminal) break;
    }
    return total;
  }

  const M& model_;
  Guide& guide_;
  PomcpConfig cfg_;
  std::vector<Node> nodes_;
};

}  // namespace planwb
