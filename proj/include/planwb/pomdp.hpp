#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "planwb/atoms.hpp"
#include "planwb/rng.hpp"

namespace planwb {

// Observations are small dense codes: domains map whatever the agent senses
// into one integer per step (e.g. a bit vector).
using Obs = uint32_t;

struct StepResult {
  Obs obs = 0;
  double reward = 0.0;
  bool terminal = false;
};

// A generative model supplies everything the planners need: a finite action
// space with ground-atom names, a prior sampler for hidden states, a
// single-step simulator that is a pure function of (state, action, rng
// stream), and a mutation hook used to diversify duplicated particles.
template <class M>
concept GenerativeModel = requires(const M m, typename M::State s, Rng rng) {
  { m.action_count() } -> std::convertible_to<int>;
  { m.action_atom(0) } -> std::convertible_to<asp::GAtom>;
  { m.discount() } -> std::convertible_to<double>;
  { m.max_reward() } -> std::convertible_to<double>;
  { m.sample_initial(rng) } -> std::same_as<typename M::State>;
  { m.step(s, 0, rng) } -> std::same_as<StepResult>;
  { m.mutate(s, rng) };
  { m.name() } -> std::convertible_to<std::string>;
};

inline double discounted_return(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("discount must be in [0,1)");
  double total = 0.0;
  double scale = 1.0;
  for (double r : rewards) {
    total += scale * r;
    scale *= gamma;
  }
  return total;
}

}  // namespace planwb
