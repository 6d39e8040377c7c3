#include "planwb/rocksample.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace planwb {

namespace {

// Factor m into a columns x b rows with b the largest divisor of m not
// exceeding sqrt(m), so regions stay close to square and hold one rock each.
std::pair<int, int> region_grid(int m) {
  int b = 1;
  for (int d = 1; d * d <= m; ++d)
    if (m % d == 0) b = d;
  return {m / b, b};  // {columns, rows}
}

}  // namespace

RocksampleModel::RocksampleModel(const RockConfig& cfg, uint64_t layout_seed) : cfg_(cfg) {
  if (cfg_.n < 2) throw std::invalid_argument("rocksample: grid side must be >= 2");
  if (cfg_.m < 1 || cfg_.m > 31) throw std::invalid_argument("rocksample: rock count out of range");
  start_ = cfg_.agent_start.value_or(std::pair<int, int>{0, cfg_.n / 2});
  if (!cfg_.rock_positions.empty()) {
    if (static_cast<int>(cfg_.rock_positions.size()) != cfg_.m)
      throw std::invalid_argument("rocksample: fixed layout must list one position per rock");
    rocks_ = cfg_.rock_positions;
    return;
  }
  auto [cols, rows] = region_grid(cfg_.m);
  if (cols > cfg_.n || rows > cfg_.n)
    throw std::invalid_argument("rocksample: more rocks than region cells");
  Rng rng(derive(layout_seed, 0x6c61796f75742331ull));
  rocks_.reserve(cfg_.m);
  for (int k = 0; k < cfg_.m; ++k) {
    int cx = k % cols, cy = k / cols;
    int x0 = cx * cfg_.n / cols, x1 = (cx + 1) * cfg_.n / cols;
    int y0 = cy * cfg_.n / rows, y1 = (cy + 1) * cfg_.n / rows;
    std::pair<int, int> p;
    do {
      p = {x0 + static_cast<int>(rng.uniform_int(static_cast<uint32_t>(x1 - x0))),
           y0 + static_cast<int>(rng.uniform_int(static_cast<uint32_t>(y1 - y0)))};
    } while (p == start_);
    rocks_.push_back(p);
  }
}

asp::GAtom RocksampleModel::action_atom(int a) const {
  using asp::make_atom;
  using asp::Term;
  switch (a) {
    case kNorth: return make_atom("north");
    case kSouth: return make_atom("south");
    case kEast: return make_atom("east");
    case kWest: return make_atom("west");
    case kSample: return make_atom("sample");
    default: return make_atom("check", Term::integer(a - 4));
  }
}

RockState RocksampleModel::sample_initial(Rng& rng) const {
  RockState s;
  s.x = static_cast<uint8_t>(start_.first);
  s.y = static_cast<uint8_t>(start_.second);
  for (int i = 0; i < cfg_.m; ++i)
    if (rng.bernoulli(0.5)) s.value_bits |= 1u << i;
  return s;
}

int RocksampleModel::manhattan(const State& s, int rock) const {
  return std::abs(static_cast<int>(s.x) - rocks_[rock].first) +
         std::abs(static_cast<int>(s.y) - rocks_[rock].second);
}

double RocksampleModel::sensor_accuracy(int dist) const {
  return (1.0 + std::exp2(-dist / cfg_.d0)) / 2.0;
}

StepResult RocksampleModel::step(State& s, int action, Rng& rng) const {
  StepResult r;
  switch (action) {
    case kNorth:
      if (s.y + 1 < cfg_.n) ++s.y;
      return r;
    case kSouth:
      if (s.y > 0) --s.y;
      return r;
    case kEast:
      if (s.x + 1 < cfg_.n) {
        ++s.x;
      } else {
        r.reward = 10.0;
        r.terminal = true;
      }
      return r;
    case kWest:
      if (s.x > 0) --s.x;
      return r;
    case kSample: {
      for (int i = 0; i < cfg_.m; ++i) {
        if (rocks_[i].first == s.x && rocks_[i].second == s.y) {
          bool fresh_valuable = (s.value_bits & (1u << i)) && !(s.sampled_bits & (1u << i));
          r.reward = fresh_valuable ? 10.0 : -10.0;
          s.sampled_bits |= 1u << i;
          return r;
        }
      }
      r.reward = -10.0;  // sampling bare ground is a worthless sample
      return r;
    }
    default: {
      int rock = action - 5;
      if (rock < 0 || rock >= cfg_.m) throw std::invalid_argument("rocksample: bad action");
      bool valuable = (s.value_bits >> rock) & 1u;
      bool correct = rng.bernoulli(sensor_accuracy(manhattan(s, rock)));
      bool reads_good = correct == valuable;
      r.obs = reads_good ? kRockObsGood : kRockObsBad;
      return r;
    }
  }
}

void RocksampleModel::mutate(State& s, Rng& rng) const {
  s.value_bits ^= 1u << rng.uniform_int(static_cast<uint32_t>(cfg_.m));
}

}  // namespace planwb
