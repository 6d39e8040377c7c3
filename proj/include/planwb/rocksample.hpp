#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planwb/pomdp.hpp"

namespace planwb {

// Hidden state: agent cell plus one value bit and one sampled bit per rock.
// Rock positions are episode constants owned by the model.
struct RockState {
  uint8_t x = 0;
  uint8_t y = 0;
  uint32_t value_bits = 0;    // bit i set: rock i+1 is valuable
  uint32_t sampled_bits = 0;  // bit i set: rock i+1 has been sampled
  bool operator==(const RockState&) const = default;
};

struct RockConfig {
  int n = 12;        // grid side
  int m = 4;         // rock count
  double d0 = 20.0;  // sensor half-efficiency distance
  double gamma = 0.95;
  // Optional fixed layout; when empty the layout is drawn per episode by
  // partitioning the grid into m rectangular regions and placing one rock
  // uniformly inside each.
  std::optional<std::pair<int, int>> agent_start;        // default (0, n/2)
  std::vector<std::pair<int, int>> rock_positions;       // default seeded placement
};

// Observation codes shared by all rocksample actions.
inline constexpr Obs kRockObsNone = 0;
inline constexpr Obs kRockObsGood = 1;
inline constexpr Obs kRockObsBad = 2;

// Actions: 0 north, 1 south, 2 east, 3 west, 4 sample, 5.. check(1..m).
// East from the right edge exits the grid for +10 and ends the episode.
class RocksampleModel {
 public:
  using State = RockState;

  RocksampleModel(const RockConfig& cfg, uint64_t layout_seed);

  int action_count() const { return 5 + cfg_.m; }
  asp::GAtom action_atom(int a) const;
  double discount() const { return cfg_.gamma; }
  double max_reward() const { return 10.0; }
  std::string name() const { return "rocksample"; }

  State sample_initial(Rng& rng) const;
  StepResult step(State& s, int action, Rng& rng) const;
  void mutate(State& s, Rng& rng) const;  // flip one random rock's value bit

  const RockConfig& config() const { return cfg_; }
  std::pair<int, int> rock_position(int i) const { return rocks_[i]; }  // 0-based
  std::pair<int, int> agent_start() const { return start_; }
  int manhattan(const State& s, int rock) const;
  double sensor_accuracy(int dist) const;  // (1 + 2^(-d/d0)) / 2

  static constexpr int kNorth = 0, kSouth = 1, kEast = 2, kWest = 3, kSample = 4;
  static int check_action(int rock_1based) { return 4 + rock_1based; }

 private:
  RockConfig cfg_;
  std::pair<int, int> start_;
  std::vector<std::pair<int, int>> rocks_;
};

}  // namespace planwb
