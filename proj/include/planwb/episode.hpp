#pragma once

#include <utility>
#include <vector>

#include "planwb/belief.hpp"
#include "planwb/pomdp.hpp"
#include "planwb/trace.hpp"

namespace planwb {

struct EpisodeConfig {
  size_t particle_budget = 1024;
  int max_steps = 200;
  std::string config_digest;  // copied into the trace header
};

// A planner consumes the current belief and returns an action index; it is
// told what was actually executed so stateful heuristics can follow along.
template <class P, class M>
concept Planner = requires(P p, const ParticleBelief<typename M::State>& b, uint64_t seed) {
  { p.plan(b, seed) } -> std::convertible_to<int>;
  { p.on_executed(0, Obs{0}) };
};

// Plan / execute / observe / filter loop. Every source of randomness is a
// stream derived from (seed, step), so one (seed, config) pair reproduces the
// identical trace. Belief depletion aborts the episode and flags the trace.
template <class M, class P, class FeatureFn>
  requires GenerativeModel<M> && Planner<P, M>
EpisodeTrace run_episode(const M& model, P& planner, FeatureFn&& features,
                         const EpisodeConfig& cfg, uint64_t seed) {
  EpisodeTrace trace;
  trace.domain = model.name();
  trace.seed = seed;
  trace.config_digest = cfg.config_digest;

  Rng init_rng(derive(seed, 0x696e6974ull));
  auto state = model.sample_initial(init_rng);
  auto belief = initial_belief(model, cfg.particle_budget, init_rng);

  std::vector<double> rewards;
  for (int t = 0; t < cfg.max_steps; ++t) {
    TraceStep step;
    step.t = t;
    step.features = features(model, belief);
    int action = planner.plan(belief, derive(seed, 0x706c616eull, static_cast<uint64_t>(t)));
    Rng world_rng(derive(seed, 0x73746570ull, static_cast<uint64_t>(t)));
    StepResult sr = model.step(state, action, world_rng);
    step.action = model.action_atom(action);
    step.reward = sr.reward;
    trace.steps.push_back(std::move(step));
    rewards.push_back(sr.reward);
    planner.on_executed(action, sr.obs);
    if (sr.terminal) break;
    Rng filter_rng(derive(seed, 0x62656c66ull, static_cast<uint64_t>(t)));
    try {
      belief = belief_update(belief, model, action, sr.obs, cfg.particle_budget, filter_rng);
    } catch (const BeliefCollapse&) {
      trace.failed = true;
      break;
    }
  }
  trace.total_return = discounted_return(rewards, model.discount());
  return trace;
}

}  // namespace planwb
