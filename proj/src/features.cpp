#include "planwb/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace planwb {

using asp::FactBank;
using asp::GAtom;
using asp::make_atom;
using asp::Term;

int discretize_prob(double p, int bucket) {
  int v = static_cast<int>(std::floor(100.0 * p / bucket + 0.5)) * bucket;
  return std::clamp(v, 0, 100);
}

std::vector<double> rs_value_fractions(const RocksampleModel& model,
                                       const ParticleBelief<RockState>& belief) {
  int m = model.config().m;
  std::vector<double> frac(static_cast<size_t>(m), 0.0);
  for (const RockState& p : belief.particles())
    for (int i = 0; i < m; ++i)
      if ((p.value_bits >> i) & 1u) frac[static_cast<size_t>(i)] += 1.0;
  for (double& f : frac) f /= static_cast<double>(belief.size());
  return frac;
}

asp::FactBank rs_features_at(const RocksampleModel& model, const RockState& s,
                             std::span<const double> value_frac) {
  FactBank out;
  int m = model.config().m;
  for (int i = 0; i < m; ++i)
    out.add(make_atom("guess", Term::integer(i + 1),
                      Term::integer(discretize_prob(value_frac[static_cast<size_t>(i)], 1))));
  for (int i = 0; i < m; ++i)
    out.add(make_atom("dist", Term::integer(i + 1), Term::integer(model.manhattan(s, i))));
  for (int i = 0; i < m; ++i)
    out.add(make_atom("delta_x", Term::integer(i + 1),
                      Term::integer(model.rock_position(i).first - s.x)));
  for (int i = 0; i < m; ++i)
    out.add(make_atom("delta_y", Term::integer(i + 1),
                      Term::integer(model.rock_position(i).second - s.y)));
  int sampled = 0;
  for (int i = 0; i < m; ++i) {
    if ((s.sampled_bits >> i) & 1u) {
      out.add(make_atom("sampled", Term::integer(i + 1)));
      ++sampled;
    }
  }
  out.add(make_atom("num_sampled",
                    Term::integer(discretize_prob(static_cast<double>(sampled) / m, 1))));
  return out;
}

asp::FactBank rs_features(const RocksampleModel& model, const ParticleBelief<RockState>& belief) {
  return rs_features_at(model, belief.at(0), rs_value_fractions(model, belief));
}

namespace {

// Which cones contain the offset (dx,dy)? Diagonals belong to two.
void cone_membership(int dx, int dy, std::array<bool, kDirCount>& in) {
  in = {false, false, false, false};
  if (dy > 0 && std::abs(dx) <= dy) in[static_cast<int>(Dir::North)] = true;
  if (dy < 0 && std::abs(dx) <= -dy) in[static_cast<int>(Dir::South)] = true;
  if (dx > 0 && std::abs(dy) <= dx) in[static_cast<int>(Dir::East)] = true;
  if (dx < 0 && std::abs(dy) <= -dx) in[static_cast<int>(Dir::West)] = true;
}

}  // namespace

asp::FactBank poc_features_at(const PocmanModel& model, const ParticleBelief<PocState>& belief,
                              int agent_x, int agent_y) {
  const Maze& maze = model.maze();
  const int n = static_cast<int>(belief.size());

  // Food masks per (direction, distance): cells inside the cone within D.
  std::array<std::array<FoodMask, kPocMaxDist + 1>, kDirCount> cone;
  for (int dy = -kPocMaxDist; dy <= kPocMaxDist; ++dy) {
    for (int dx = -kPocMaxDist; dx <= kPocMaxDist; ++dx) {
      int dist = std::abs(dx) + std::abs(dy);
      if (dist == 0 || dist > kPocMaxDist) continue;
      int x = agent_x + dx, y = agent_y + dy;
      if (maze.wall(x, y)) continue;  // food never sits on walls
      std::array<bool, kDirCount> in;
      cone_membership(dx, dy, in);
      for (int c = 0; c < kDirCount; ++c)
        if (in[c])
          for (int d = dist; d <= kPocMaxDist; ++d)
            cone[static_cast<size_t>(c)][static_cast<size_t>(d)].set(
                static_cast<size_t>(maze.index(x, y)));
    }
  }

  // Per particle, the nearest ghost / food distance inside each cone; then
  // cumulative counts give the fraction within D directly.
  std::array<std::array<int, kPocMaxDist + 2>, kDirCount> ghost_hist{};
  std::array<std::array<int, kPocMaxDist + 2>, kDirCount> food_hist{};
  for (const PocState& p : belief.particles()) {
    std::array<int, kDirCount> nearest;
    nearest.fill(kPocMaxDist + 1);
    for (int g = 0; g < model.ghosts(); ++g) {
      int dx = p.gx[g] - agent_x, dy = p.gy[g] - agent_y;
      int dist = std::abs(dx) + std::abs(dy);
      if (dist == 0 || dist > kPocMaxDist) continue;
      std::array<bool, kDirCount> in;
      cone_membership(dx, dy, in);
      for (int c = 0; c < kDirCount; ++c)
        if (in[c]) nearest[static_cast<size_t>(c)] = std::min(nearest[static_cast<size_t>(c)], dist);
    }
    for (int c = 0; c < kDirCount; ++c)
      ++ghost_hist[static_cast<size_t>(c)][static_cast<size_t>(nearest[static_cast<size_t>(c)])];
    for (int c = 0; c < kDirCount; ++c) {
      int first = kPocMaxDist + 1;
      for (int d = 1; d <= kPocMaxDist; ++d) {
        if ((p.food & cone[static_cast<size_t>(c)][static_cast<size_t>(d)]).any()) {
          first = d;
          break;
        }
      }
      ++food_hist[static_cast<size_t>(c)][static_cast<size_t>(first)];
    }
  }

  FactBank out;
  auto emit = [&](const char* pred,
                  const std::array<std::array<int, kPocMaxDist + 2>, kDirCount>& hist) {
    for (int c = 0; c < kDirCount; ++c) {
      int within = 0;
      std::array<int, kPocMaxDist + 1> cum{};
      for (int d = 1; d <= kPocMaxDist; ++d) {
        within += hist[static_cast<size_t>(c)][static_cast<size_t>(d)];
        cum[static_cast<size_t>(d)] = within;
      }
      for (int d = 1; d <= kPocMaxDist; ++d) {
        int v = discretize_prob(static_cast<double>(cum[static_cast<size_t>(d)]) / n, 10);
        out.add(make_atom(pred, Term::symbol(dir_name(static_cast<Dir>(c))), Term::integer(d),
                          Term::integer(v)));
      }
    }
  };
  emit("ghost", ghost_hist);
  emit("food", food_hist);
  for (int c = 0; c < kDirCount; ++c) {
    auto [dx, dy] = dir_delta(static_cast<Dir>(c));
    if (maze.wall(agent_x + dx, agent_y + dy))
      out.add(make_atom("wall", Term::symbol(dir_name(static_cast<Dir>(c)))));
  }
  return out;
}

asp::FactBank poc_features(const PocmanModel& model, const ParticleBelief<PocState>& belief) {
  const PocState& s = belief.at(0);
  return poc_features_at(model, belief, s.x, s.y);
}

}  // namespace planwb
