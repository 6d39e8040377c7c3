#include "planwb/pocman.hpp"

#include <cstdlib>
#include <stdexcept>

namespace planwb {

namespace {

int manhattan(int ax, int ay, int bx, int by) { return std::abs(ax - bx) + std::abs(ay - by); }

}  // namespace

Obs poc_observe(const Maze& maze, const PocState& s, int ghosts) {
  Obs obs = 0;
  for (int d = 0; d < kDirCount; ++d) {
    auto [dx, dy] = dir_delta(static_cast<Dir>(d));
    // Line of sight: scan until the first wall.
    for (int x = s.x + dx, y = s.y + dy; !maze.wall(x, y); x += dx, y += dy) {
      bool hit = false;
      for (int g = 0; g < ghosts; ++g)
        if (s.gx[g] == x && s.gy[g] == y) hit = true;
      if (hit) {
        obs |= 1u << d;
        break;
      }
    }
    if (maze.wall(s.x + dx, s.y + dy)) obs |= 1u << (4 + d);
  }
  for (int g = 0; g < ghosts; ++g)
    if (manhattan(s.x, s.y, s.gx[g], s.gy[g]) <= 2) obs |= 1u << 8;
  for (int dx = -1; dx <= 1 && !(obs & (1u << 9)); ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      if (std::abs(dx) + std::abs(dy) > 1) continue;
      int x = s.x + dx, y = s.y + dy;
      if (!maze.wall(x, y) && s.food.test(static_cast<size_t>(maze.index(x, y)))) {
        obs |= 1u << 9;
        break;
      }
    }
  return obs;
}

PocmanModel::PocmanModel(Maze maze, const PocConfig& cfg) : maze_(std::move(maze)), cfg_(cfg) {
  if (cfg_.ghosts < 0 || cfg_.ghosts > kMaxGhosts)
    throw std::invalid_argument("pocman: ghost count out of range");
  if (static_cast<int>(maze_.ghost_spawns().size()) < cfg_.ghosts)
    throw std::invalid_argument("pocman: maze has too few ghost spawns");
  if (maze_.width() * maze_.height() > kMaxMazeCells)
    throw std::invalid_argument("pocman: maze too large");
}

PocState PocmanModel::sample_initial(Rng& rng) const {
  PocState s;
  auto [ax, ay] = maze_.agent_spawn();
  s.x = static_cast<uint8_t>(ax);
  s.y = static_cast<uint8_t>(ay);
  for (int g = 0; g < cfg_.ghosts; ++g) {
    auto [gx, gy] = maze_.ghost_spawns()[g];
    s.gx[g] = static_cast<uint8_t>(gx);
    s.gy[g] = static_cast<uint8_t>(gy);
  }
  for (int y = 0; y < maze_.height(); ++y)
    for (int x = 0; x < maze_.width(); ++x)
      if (!maze_.wall(x, y) && rng.bernoulli(cfg_.rho_food))
        s.food.set(static_cast<size_t>(maze_.index(x, y)));
  return s;
}

void PocmanModel::move_ghost(State& s, int g, Rng& rng) const {
  std::array<std::pair<int, int>, kDirCount> legal;
  int legal_n = 0;
  for (int d = 0; d < kDirCount; ++d) {
    auto [dx, dy] = dir_delta(static_cast<Dir>(d));
    int nx = s.gx[g] + dx, ny = s.gy[g] + dy;
    if (!maze_.wall(nx, ny)) legal[legal_n++] = {nx, ny};
  }
  if (legal_n == 0) return;
  bool in_range = manhattan(s.x, s.y, s.gx[g], s.gy[g]) <= cfg_.chase_dist;
  int pick;
  if (in_range && rng.bernoulli(cfg_.rho_chase)) {
    // Chase: restrict to the moves that most reduce distance to the agent.
    int best = 1 << 30, count = 0;
    std::array<int, kDirCount> mins{};
    for (int i = 0; i < legal_n; ++i) {
      int d = manhattan(s.x, s.y, legal[i].first, legal[i].second);
      if (d < best) {
        best = d;
        count = 0;
      }
      if (d == best) mins[count++] = i;
    }
    pick = mins[rng.uniform_int(static_cast<uint32_t>(count))];
  } else {
    pick = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(legal_n)));
  }
  s.gx[g] = static_cast<uint8_t>(legal[pick].first);
  s.gy[g] = static_cast<uint8_t>(legal[pick].second);
}

StepResult PocmanModel::step(State& s, int action, Rng& rng) const {
  if (action < 0 || action >= kDirCount) throw std::invalid_argument("pocman: bad action");
  StepResult r;
  r.reward = -cfg_.step_penalty;
  int old_x = s.x, old_y = s.y;
  auto [dx, dy] = dir_delta(static_cast<Dir>(action));
  if (maze_.wall(s.x + dx, s.y + dy)) {
    r.reward -= cfg_.death_penalty;  // bump: stay put, pay the wall penalty
  } else {
    s.x = static_cast<uint8_t>(s.x + dx);
    s.y = static_cast<uint8_t>(s.y + dy);
  }
  size_t cell = static_cast<size_t>(maze_.index(s.x, s.y));
  if (s.food.test(cell)) {
    s.food.reset(cell);
    r.reward += cfg_.food_reward;
    if (s.food.none()) {
      r.reward += cfg_.clear_reward;
      r.terminal = true;
    }
  }
  bool dead = false;
  for (int g = 0; g < cfg_.ghosts; ++g) {
    int gx0 = s.gx[g], gy0 = s.gy[g];
    move_ghost(s, g, rng);
    if (s.gx[g] == old_x && s.gy[g] == old_y && gx0 == s.x && gy0 == s.y) dead = true;  // swapped
    if (s.gx[g] == s.x && s.gy[g] == s.y) dead = true;
  }
  if (dead) {
    r.reward -= cfg_.death_penalty;
    r.terminal = true;
  }
  r.obs = poc_observe(maze_, s, cfg_.ghosts);
  return r;
}

void PocmanModel::mutate(State& s, Rng& rng) const {
  if (cfg_.ghosts == 0) return;
  int g = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(cfg_.ghosts)));
  std::array<std::pair<int, int>, kDirCount> legal;
  int legal_n = 0;
  for (int d = 0; d < kDirCount; ++d) {
    auto [dx, dy] = dir_delta(static_cast<Dir>(d));
    int nx = s.gx[g] + dx, ny = s.gy[g] + dy;
    if (!maze_.wall(nx, ny)) legal[legal_n++] = {nx, ny};
  }
  if (legal_n == 0) return;
  int pick = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(legal_n)));
  s.gx[g] = static_cast<uint8_t>(legal[pick].first);
  s.gy[g] = static_cast<uint8_t>(legal[pick].second);
}

}  // namespace planwb
