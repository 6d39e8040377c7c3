#include "planwb/despot_bounds.hpp"

#include <cmath>
#include <cstdlib>

namespace planwb {

double upper_bound_trivial(double r_max, double gamma) { return r_max / (1.0 - gamma); }

double rocksample_hindsight_bound(const RocksampleModel& model, const RockState& s) {
  const int m = model.config().m;
  const double gamma = model.discount();
  uint32_t remaining = s.value_bits & ~s.sampled_bits & ((1u << m) - 1u);
  int x = s.x, y = s.y, t = 0;
  double total = 0.0;
  while (remaining != 0) {
    int best = -1, best_d = 1 << 30;
    for (int r = 0; r < m; ++r) {
      if (!((remaining >> r) & 1u)) continue;
      auto [rx, ry] = model.rock_position(r);
      int d = std::abs(rx - x) + std::abs(ry - y);
      if (d < best_d) {
        best_d = d;
        best = r;
      }
    }
    t += best_d;
    total += std::pow(gamma, t) * 10.0;  // sample on arrival
    t += 1;                              // the sample action itself
    auto [rx, ry] = model.rock_position(best);
    x = rx;
    y = ry;
    remaining &= ~(1u << best);
  }
  t += model.config().n - 1 - x;  // walk to the right edge, then exit east
  total += std::pow(gamma, t) * 10.0;
  return total;
}

double pocman_hindsight_bound(const PocmanModel& model, const PocState& s) {
  const Maze& maze = model.maze();
  const double gamma = model.discount();
  double total = 0.0;
  int max_d = 0;
  for (int y = 0; y < maze.height(); ++y) {
    for (int x = 0; x < maze.width(); ++x) {
      if (maze.wall(x, y) || !s.food.test(static_cast<size_t>(maze.index(x, y)))) continue;
      int d = std::abs(x - s.x) + std::abs(y - s.y);
      total += std::pow(gamma, 1 + d) * model.config().food_reward;
      max_d = std::max(max_d, d);
    }
  }
  total += std::pow(gamma, 1 + max_d) * model.config().clear_reward;
  return total;
}

}  // namespace planwb
