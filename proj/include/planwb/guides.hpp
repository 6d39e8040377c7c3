#pragma once

#include <array>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "planwb/features.hpp"
#include "planwb/weights.hpp"

namespace planwb {

// Action-sampling distributions a solver can ask a guide for.
enum class WeightKind : uint8_t { Uniform = 0, Soft = 1, Strict = 2, Preferred = 3 };
inline constexpr int kWeightKinds = 4;

asp::ActionSpace rocksample_action_space(int rocks);
asp::ActionSpace pocman_action_space();

// Guides answer per-state policy queries during a single planning call:
// which actions the rule set entails, what distribution rollouts should
// sample from, and which actions a handcrafted baseline prefers. Hidden-state
// estimates (rock-value guesses / ghost+food occupancy) are frozen from the
// belief passed to begin_plan; observable components are recomputed from the
// queried simulated state. Results are memoized on the observable key, which
// is constant per history node.
class RockGuide {
 public:
  using Model = RocksampleModel;
  using State = RockState;

  RockGuide(const RocksampleModel& model, const asp::RuleSet* rules);

  void begin_plan(const ParticleBelief<RockState>& belief);
  const asp::FactBank& features(const RockState& s);
  std::span<const int> entailed(const RockState& s);
  std::span<const double> weights(const RockState& s, WeightKind kind);
  std::span<const int> preferred(const RockState& s);
  void on_executed(int action, Obs obs);  // feeds the check-count baseline
  const asp::ActionSpace& action_space() const { return space_; }
  const RocksampleModel& model() const { return model_; }

 private:
  struct Entry {
    asp::FactBank feats;
    std::optional<std::vector<int>> entailed;
    std::optional<std::vector<int>> preferred;
    std::array<std::optional<std::vector<double>>, kWeightKinds> w;
  };
  Entry& entry(const RockState& s);

  const RocksampleModel& model_;
  const asp::RuleSet* rules_;
  asp::ActionSpace space_;
  std::vector<double> value_frac_;
  std::vector<int> obs_good_, obs_bad_;  // per-rock check outcomes this episode
  std::unordered_map<uint64_t, Entry> memo_;
  std::vector<double> uniform_;
};

class PocGuide {
 public:
  using Model = PocmanModel;
  using State = PocState;

  PocGuide(const PocmanModel& model, const asp::RuleSet* rules);

  void begin_plan(const ParticleBelief<PocState>& belief);
  const asp::FactBank& features(const PocState& s);
  std::span<const int> entailed(const PocState& s);
  std::span<const double> weights(const PocState& s, WeightKind kind);
  std::span<const int> preferred(const PocState& s);
  void on_executed(int action, Obs obs);
  const asp::ActionSpace& action_space() const { return space_; }
  const PocmanModel& model() const { return model_; }

 private:
  struct Entry {
    asp::FactBank feats;
    std::optional<std::vector<int>> entailed;
    std::optional<std::vector<int>> preferred;
    std::array<std::optional<std::vector<double>>, kWeightKinds> w;
  };
  Entry& entry(const PocState& s);

  const PocmanModel& model_;
  const asp::RuleSet* rules_;
  asp::ActionSpace space_;
  const ParticleBelief<PocState>* root_ = nullptr;
  std::unordered_map<uint64_t, Entry> memo_;
  std::vector<double> uniform_;
};

}  // namespace planwb
