#pragma once

#include <array>
#include <bitset>
#include <string>

#include "planwb/maze.hpp"
#include "planwb/pomdp.hpp"

namespace planwb {

inline constexpr int kMaxGhosts = 4;
inline constexpr int kMaxMazeCells = 384;
using FoodMask = std::bitset<kMaxMazeCells>;

// Hidden state: agent cell, ghost cells, and the per-cell food bits.
struct PocState {
  uint8_t x = 0;
  uint8_t y = 0;
  std::array<uint8_t, kMaxGhosts> gx{};
  std::array<uint8_t, kMaxGhosts> gy{};
  FoodMask food;
  bool operator==(const PocState&) const = default;
};

struct PocConfig {
  int ghosts = 2;
  double rho_food = 0.5;   // iid probability a floor cell starts with food
  double rho_chase = 0.75; // probability a ghost in range chases the agent
  int chase_dist = 2;      // Manhattan range that triggers chasing
  double gamma = 0.95;
  double food_reward = 1.0;
  double clear_reward = 1000.0;   // granted when the last pellet is eaten
  double death_penalty = 100.0;   // ghost collision and wall bump alike
  double step_penalty = 1.0;
};

// Observation bit layout (deterministic function of the post-move state):
//   bit 0..3   line-of-sight ghost in direction north/south/east/west
//   bit 4..7   wall in the adjacent cell, same direction order
//   bit 8      any ghost within Manhattan distance 2
//   bit 9      any food within Manhattan distance 1
Obs poc_observe(const Maze& maze, const PocState& s, int ghosts);

// Actions: 0 north, 1 south, 2 east, 3 west. Stepping into a wall keeps the
// agent in place and costs the death penalty on top of the step penalty.
// Ghost contact (cell swap or shared cell after both move) ends the episode.
class PocmanModel {
 public:
  using State = PocState;

  PocmanModel(Maze maze, const PocConfig& cfg);

  int action_count() const { return kDirCount; }
  asp::GAtom action_atom(int a) const { return asp::make_atom(dir_name(static_cast<Dir>(a))); }
  double discount() const { return cfg_.gamma; }
  double max_reward() const { return cfg_.clear_reward; }
  std::string name() const { return "pocman"; }

  State sample_initial(Rng& rng) const;
  StepResult step(State& s, int action, Rng& rng) const;
  void mutate(State& s, Rng& rng) const;  // teleport one ghost to an adjacent cell

  const Maze& maze() const { return maze_; }
  const PocConfig& config() const { return cfg_; }
  int ghosts() const { return cfg_.ghosts; }

 private:
  void move_ghost(State& s, int g, Rng& rng) const;

  Maze maze_;
  PocConfig cfg_;
};

}  // namespace planwb
