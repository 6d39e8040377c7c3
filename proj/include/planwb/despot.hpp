#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "planwb/belief.hpp"
#include "planwb/guides.hpp"
#include "planwb/pomdp.hpp"

namespace planwb {

// Lower bound = mean return of a default policy simulated per scenario:
//   Trivial        a fixed action every step
//   Asp            sample from the rule guide's strict weights
//   PreferredStub  sample uniformly among the handcrafted baseline's actions
enum class DespotLowerKind : uint8_t { Trivial, Asp, PreferredStub };
// Upper bound per scenario state: the uninformed R_max/(1-gamma), or a
// domain hindsight bound supplied at construction.
enum class DespotUpperKind : uint8_t { Trivial, Hindsight };

struct DespotConfig {
  int scenarios = 500;       // K
  double xi = 0.95;          // weight of the root gap in the exploration score
  double eps0 = 0.01;        // stop when the root gap closes to this
  double lambda = 0.01;      // per-node regularization of the final choice
  int depth_cap = 90;
  double time_budget_s = 1.0;
  int max_trials = 0;        // > 0: fixed trial budget (deterministic mode)
  int trivial_action = 0;
  DespotLowerKind lower = DespotLowerKind::Trivial;
  DespotUpperKind upper = DespotUpperKind::Trivial;
};

// Anytime search over a tree of scenario bundles. Each trial descends by
// upper-bound action choice and gap-weighted child choice, expands one leaf,
// and tightens [l, u] along the way back up. Scenario randomness at depth d
// is a pure function of (scenario stream, d), so every transition is
// reproducible regardless of trial order.
template <class M, class Guide>
  requires GenerativeModel<M>
class DespotPlanner {
 public:
  using State = typename M::State;
  using BoundFn = std::function<double(const State&)>;

  DespotPlanner(const M& model, Guide& guide, DespotConfig cfg, BoundFn hindsight = {})
      : model_(model), guide_(guide), cfg_(cfg), hindsight_(std::move(hindsight)) {
    if (cfg_.upper == DespotUpperKind::Hindsight && !hindsight_)
      throw std::invalid_argument("despot: hindsight upper bound needs a bound function");
  }

  int plan(const ParticleBelief<State>& belief, uint64_t seed) {
    guide_.begin_plan(belief);
    int fallback = default_action(belief.at(0));
    if (cfg_.max_trials == 0 && cfg_.time_budget_s <= 0.0) return fallback;

    nodes_.clear();
    eps_history_.clear();
    streams_.resize(static_cast<size_t>(cfg_.scenarios));
    for (int i = 0; i < cfg_.scenarios; ++i)
      streams_[static_cast<size_t>(i)] = derive(seed, 0x7363656eull, static_cast<uint64_t>(i));

    Node root;
    root.depth = 0;
    Rng draw(derive(seed, 0x64726177ull));
    for (int i = 0; i < cfg_.scenarios; ++i) {
      root.scen.push_back(static_cast<uint32_t>(i));
      root.states.push_back(belief.sample(draw));
      root.dead.push_back(0);
    }
    nodes_.push_back(std::move(root));
    init_bounds(0);

    auto t0 = std::chrono::steady_clock::now();
    int trials = 0;
    double prev_eps = std::numeric_limits<double>::infinity();
    while (true) {
      double eps_root = nodes_[0].u - nodes_[0].l;
      eps_history_.push_back(eps_root);
      if (eps_root > prev_eps + 1e-9) ++eps_increases_;
      prev_eps = eps_root;
      if (eps_root <= cfg_.eps0) break;
      if (cfg_.max_trials > 0) {
        if (trials >= cfg_.max_trials) break;
      } else {
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
        if (elapsed.count() >= cfg_.time_budget_s) break;
      }
      trial();
      ++trials;
    }

    if (!nodes_[0].expanded) return fallback;
    const Node& root_node = nodes_[0];
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < model_.action_count(); ++a) {
      double score = q_bound(root_node, a, false) -
                     cfg_.lambda * static_cast<double>(subtree_size(root_node, a));
      if (score > best_score) {
        best_score = score;
        best = a;
      }
    }
    return best;
  }

  void on_executed(int action, Obs obs) { guide_.on_executed(action, obs); }

  // Diagnostics, cumulative across planning calls unless noted.
  long bound_violations() const { return bound_violations_; }
  long eps_increases() const { return eps_increases_; }
  const std::vector<double>& root_eps_history() const { return eps_history_; }  // last call
  size_t tree_size() const { return nodes_.size(); }
  double root_lower() const { return nodes_.at(0).l; }
  double root_upper() const { return nodes_.at(0).u; }
  Guide& guide() { return guide_; }

  // Debug invariant: under every action of every expanded node, the children
  // hold each live parent scenario exactly once and nothing else.
  bool partitions_consistent() const {
    for (const Node& n : nodes_) {
      if (!n.expanded || n.acts.empty()) continue;
      std::vector<uint32_t> live;
      for (size_t j = 0; j < n.scen.size(); ++j)
        if (!n.dead[j]) live.push_back(n.scen[j]);
      std::sort(live.begin(), live.end());
      for (const ActEdge& e : n.acts) {
        std::vector<uint32_t> got;
        for (auto [obs, c] : e.children) {
          const Node& ch = nodes_[static_cast<size_t>(c)];
          got.insert(got.end(), ch.scen.begin(), ch.scen.end());
        }
        std::sort(got.begin(), got.end());
        if (got != live) return false;
      }
    }
    return true;
  }

 private:
  struct ActEdge {
    double reward_sum = 0.0;                    // over the parent's live scenarios
    std::vector<std::pair<Obs, int>> children;  // sorted by observation
  };
  struct Node {
    std::vector<uint32_t> scen;
    std::vector<State> states;   // parallel to scen
    std::vector<uint8_t> dead;   // parallel: scenario ended on the way in
    int depth = 0;
    double l = 0.0, u = 0.0;
    bool expanded = false;
    std::vector<ActEdge> acts;
  };

  double q_bound(const Node& n, int a, bool upper) const {
    const ActEdge& e = n.acts[static_cast<size_t>(a)];
    double sum = e.reward_sum;
    for (auto [obs, c] : e.children) {
      const Node& ch = nodes_[static_cast<size_t>(c)];
      sum += model_.discount() * static_cast<double>(ch.scen.size()) * (upper ? ch.u : ch.l);
    }
    return sum / static_cast<double>(n.scen.size());
  }

  int default_action(const State& s) {
    switch (cfg_.lower) {
      case DespotLowerKind::Trivial: return cfg_.trivial_action;
      case DespotLowerKind::Asp: {
        auto w = guide_.weights(s, WeightKind::Strict);
        int best = 0;
        for (int a = 1; a < model_.action_count(); ++a)
          if (w[static_cast<size_t>(a)] > w[static_cast<size_t>(best)]) best = a;
        return best;
      }
      default: {
        auto pref = guide_.preferred(s);
        return pref.empty() ? cfg_.trivial_action : pref[0];
      }
    }
  }

  // Default-policy value of one scenario from `depth` on, discounted to that
  // depth. Transitions replay the scenario stream; policy sampling uses a
  // parallel stream so tree expansion and rollouts see identical transitions.
  double rollout(State s, uint32_t scen, int depth) {
    double total = 0.0, scale = 1.0;
    for (int d = depth; d < cfg_.depth_cap; ++d) {
      int a;
      switch (cfg_.lower) {
        case DespotLowerKind::Trivial:
          a = cfg_.trivial_action;
          break;
        case DespotLowerKind::Asp: {
          Rng pol(derive(streams_[scen], static_cast<uint64_t>(d), 1));
          a = pol.pick_weighted(guide_.weights(s, WeightKind::Strict));
          break;
        }
        default: {
          Rng pol(derive(streams_[scen], static_cast<uint64_t>(d), 1));
          auto pref = guide_.preferred(s);
          a = pref.empty() ? cfg_.trivial_action
                           : pref[pol.uniform_int(static_cast<uint32_t>(pref.size()))];
          break;
        }
      }
      Rng step_rng(derive(streams_[scen], static_cast<uint64_t>(d)));
      StepResult sr = model_.step(s, a, step_rng);
      total += scale * sr.reward;
      scale *= model_.discount();
      if (sr.terminal) break;
    }
    return total;
  }

  void init_bounds(int id) {
    Node& n = nodes_[static_cast<size_t>(id)];
    if (n.depth >= cfg_.depth_cap) {
      n.l = n.u = 0.0;
      n.expanded = true;  // nothing below the horizon
      return;
    }
    double lsum = 0.0, usum = 0.0;
    const double trivial_u = model_.max_reward() / (1.0 - model_.discount());
    for (size_t j = 0; j < n.scen.size(); ++j) {
      if (n.dead[j]) continue;
      lsum += rollout(n.states[j], n.scen[j], n.depth);
      usum += cfg_.upper == DespotUpperKind::Trivial ? trivial_u : hindsight_(n.states[j]);
    }
    n.l = lsum / static_cast<double>(n.scen.size());
    n.u = std::max(usum / static_cast<double>(n.scen.size()), n.l);
  }

  void expand(int id) {
    int actions = model_.action_count();
    nodes_[static_cast<size_t>(id)].acts.resize(static_cast<size_t>(actions));
    for (int a = 0; a < actions; ++a) {
      std::map<Obs, Node> buckets;
      {
        Node& n = nodes_[static_cast<size_t>(id)];
        for (size_t j = 0; j < n.scen.size(); ++j) {
          if (n.dead[j]) continue;
          State next = n.states[j];
          Rng step_rng(derive(streams_[n.scen[j]], static_cast<uint64_t>(n.depth)));
          StepResult sr = model_.step(next, a, step_rng);
          n.acts[static_cast<size_t>(a)].reward_sum += sr.reward;
          Node& child = buckets[sr.obs];
          child.depth = n.depth + 1;
          child.scen.push_back(n.scen[j]);
          child.states.push_back(std::move(next));
          child.dead.push_back(sr.terminal ? 1 : 0);
        }
      }
      for (auto& [obs, child] : buckets) {
        nodes_.push_back(std::move(child));
        int cid = static_cast<int>(nodes_.size()) - 1;
        init_bounds(cid);
        nodes_[static_cast<size_t>(id)].acts[static_cast<size_t>(a)].children.emplace_back(obs,
                                                                                           cid);
      }
    }
    nodes_[static_cast<size_t>(id)].expanded = true;
  }

  void trial() {
    double eps_root = nodes_[0].u - nodes_[0].l;
    std::vector<int> path{0};
    while (true) {
      Node& n = nodes_[static_cast<size_t>(path.back())];
      if (!n.expanded) {
        expand(path.back());
        break;
      }
      if (n.acts.empty()) break;  // horizon leaf
      int a_star = 0;
      double best_u = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < model_.action_count(); ++a) {
        double qu = q_bound(n, a, true);
        if (qu > best_u) {
          best_u = qu;
          a_star = a;
        }
      }
      int next = -1;
      double best_e = -std::numeric_limits<double>::infinity();
      for (auto [obs, c] : n.acts[static_cast<size_t>(a_star)].children) {
        const Node& ch = nodes_[static_cast<size_t>(c)];
        double e = (ch.u - ch.l) - (static_cast<double>(ch.scen.size()) / cfg_.scenarios) *
                                       cfg_.xi * eps_root;
        if (e > best_e) {
          best_e = e;
          next = c;
        }
      }
      if (next < 0 || best_e <= 0.0) break;
      path.push_back(next);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) backup(*it);
  }

  void backup(int id) {
    Node& n = nodes_[static_cast<size_t>(id)];
    if (!n.expanded || n.acts.empty()) return;
    double ql = -std::numeric_limits<double>::infinity();
    double qu = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < model_.action_count(); ++a) {
      ql = std::max(ql, q_bound(n, a, false));
      qu = std::max(qu, q_bound(n, a, true));
    }
    double u_new = std::max(std::min(n.u, qu), n.l);
    double l_new = std::max(n.l, std::min(ql, u_new));
    if (l_new > u_new + 1e-12) ++bound_violations_;
    n.u = u_new;
    n.l = l_new;
  }

  size_t subtree_size(const Node& root, int a) const {
    size_t count = 0;
    std::vector<int> stack;
    for (auto [obs, c] : root.acts[static_cast<size_t>(a)].children) stack.push_back(c);
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      ++count;
      const Node& n = nodes_[static_cast<size_t>(id)];
      for (const ActEdge& e : n.acts)
        for (auto [obs, c] : e.children) stack.push_back(c);
    }
    return count;
  }

  const M& model_;
  Guide& guide_;
  DespotConfig cfg_;
  BoundFn hindsight_;
  std::vector<Node> nodes_;
  std::vector<uint64_t> streams_;
  std::vector<double> eps_history_;
  long bound_violations_ = 0;
  long eps_increases_ = 0;
};

}  // namespace planwb
