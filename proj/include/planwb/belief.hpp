#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "planwb/pomdp.hpp"
#include "planwb/rng.hpp"

namespace planwb {

// Raised when a belief update rejects every particle and the retry budget is
// exhausted; episodes catch it and record a failure instead of crashing.
struct BeliefCollapse : std::runtime_error {
  BeliefCollapse() : std::runtime_error("belief update rejected every particle") {}
};

// Unweighted particle approximation of the belief state: the probability of
// any state realization is its fraction of the particle list.
template <class State>
class ParticleBelief {
 public:
  ParticleBelief() = default;
  explicit ParticleBelief(std::vector<State> particles) : particles_(std::move(particles)) {}

  const std::vector<State>& particles() const { return particles_; }
  size_t size() const { return particles_.size(); }
  const State& at(size_t i) const { return particles_[i]; }
  const State& sample(Rng& rng) const {
    return particles_[rng.uniform_int(static_cast<uint32_t>(particles_.size()))];
  }

 private:
  std::vector<State> particles_;
};

template <class M>
  requires GenerativeModel<M>
ParticleBelief<typename M::State> initial_belief(const M& model, size_t count, Rng& rng) {
  std::vector<typename M::State> ps;
  ps.reserve(count);
  for (size_t i = 0; i < count; ++i) ps.push_back(model.sample_initial(rng));
  return ParticleBelief<typename M::State>(std::move(ps));
}

// Rejection-filter update: propagate every particle once through the model
// under `action` and keep those whose simulated observation matches `obs`
// without ending the episode (the update only runs when the real step
// continued, so dead particles are inconsistent with the evidence). If no
// particle survives, random particles are re-propagated with fresh randomness
// up to a retry budget before giving up with BeliefCollapse. Shortfalls are
// refilled by mutating a random survivor's pre-update state, re-propagating
// it, and keeping the mutant only if it still produces the conditioning
// observation; a plain duplicate covers failed attempts. Every particle in
// the result is therefore consistent with (action, obs, episode continues).
template <class M>
  requires GenerativeModel<M>
ParticleBelief<typename M::State> belief_update(const ParticleBelief<typename M::State>& belief,
                                                const M& model, int action, Obs obs,
                                                size_t budget, Rng& rng) {
  using State = typename M::State;
  if (belief.size() == 0) throw std::invalid_argument("belief_update: empty belief");
  std::vector<State> pre, post;
  post.reserve(budget);
  for (const State& p : belief.particles()) {
    State next = p;
    StepResult sr = model.step(next, action, rng);
    if (sr.obs == obs && !sr.terminal) {
      pre.push_back(p);
      post.push_back(std::move(next));
    }
  }
  if (post.empty()) {
    size_t retries = 8 * budget;
    for (size_t i = 0; i < retries && post.empty(); ++i) {
      const State& p = belief.sample(rng);
      State next = p;
      StepResult sr = model.step(next, action, rng);
      if (sr.obs == obs && !sr.terminal) {
        pre.push_back(p);
        post.push_back(std::move(next));
      }
    }
    if (post.empty()) throw BeliefCollapse();
  }
  if (post.size() > budget) {
    post.resize(budget);
    pre.resize(budget);
  }
  const size_t base = post.size();
  while (post.size() < budget) {
    size_t j = rng.uniform_int(static_cast<uint32_t>(base));
    bool accepted = false;
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
      State cand = pre[j];
      model.mutate(cand, rng);
      StepResult sr = model.step(cand, action, rng);
      if (sr.obs == obs && !sr.terminal) {
        post.push_back(std::move(cand));
        accepted = true;
      }
    }
    if (!accepted) post.push_back(post[j]);
  }
  return ParticleBelief<State>(std::move(post));
}

}  // namespace planwb
