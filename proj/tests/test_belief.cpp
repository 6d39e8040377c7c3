#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "planwb/belief.hpp"
#include "planwb/pocman.hpp"
#include "planwb/rocksample.hpp"

using namespace planwb;

namespace {

RocksampleModel tiny_model() {
  RockConfig cfg;
  cfg.n = 2;
  cfg.m = 2;
  cfg.agent_start = {{0, 0}};
  cfg.rock_positions = {{0, 1}, {1, 1}};
  return RocksampleModel(cfg, 0);
}

PocmanModel arena_model() {
  std::string text;
  for (int r = 0; r < 13; ++r) {
    for (int c = 0; c < 13; ++c) {
      bool border = r == 0 || r == 12 || c == 0 || c == 12;
      char cell = border ? '#' : '.';
      if (r == 6 && c == 6) cell = 'P';
      if (r == 1 && c == 1) cell = 'G';
      text += cell;
    }
    text += '\n';
  }
  PocConfig cfg;
  cfg.ghosts = 1;
  cfg.rho_food = 0.0;
  cfg.rho_chase = 1.0;
  cfg.chase_dist = 8;
  return PocmanModel(Maze::parse(text), cfg);
}

}  // namespace

TEST_CASE("discounted return sums geometric reward terms") {
  std::vector<double> none;
  CHECK(discounted_return(none, 0.95) == 0.0);
  double single[] = {10.0};
  CHECK(discounted_return(single, 0.95) == 10.0);
  double three[] = {0.0, 0.0, 10.0};
  CHECK(discounted_return(three, 0.95) == doctest::Approx(9.025));
  double mixed[] = {1.0, -2.0, 4.0};
  CHECK(discounted_return(mixed, 0.5) == doctest::Approx(1.0 - 1.0 + 1.0));

  // Linear in rewards; monotone in the discount for non-negative rewards.
  double doubled[] = {2.0, -4.0, 8.0};
  CHECK(discounted_return(doubled, 0.5) == doctest::Approx(2.0 * discounted_return(mixed, 0.5)));
  double pos[] = {1.0, 2.0, 3.0};
  CHECK(discounted_return(pos, 0.9) > discounted_return(pos, 0.5));
  CHECK_THROWS_AS(discounted_return(pos, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(discounted_return(pos, -0.1), std::invalid_argument);
}

TEST_CASE("uninformative observations keep the stepped multiset intact") {
  RocksampleModel m = tiny_model();
  Rng init(1);
  auto belief = initial_belief(m, 64, init);
  std::multiset<uint32_t> values_before;
  for (const RockState& p : belief.particles()) values_before.insert(p.value_bits);

  Rng rng(2);
  auto updated = belief_update(belief, m, RocksampleModel::kNorth, kRockObsNone, 64, rng);
  REQUIRE(updated.size() == 64);
  std::multiset<uint32_t> values_after;
  for (const RockState& p : updated.particles()) {
    CHECK(p.x == 0);
    CHECK(p.y == 1);  // everyone moved one cell north
    values_after.insert(p.value_bits);
  }
  CHECK(values_before == values_after);
}

TEST_CASE("an exact sensor reading pins the checked rock in every particle") {
  RockConfig cfg;  // 12x12, m=4
  cfg.agent_start = {{0, 6}};
  cfg.rock_positions = {{0, 6}, {9, 2}, {3, 8}, {10, 10}};  // rock 1 underfoot
  RocksampleModel m(cfg, 0);
  Rng init(3);
  auto belief = initial_belief(m, 1u << 10, init);

  Rng rng(4);
  auto updated =
      belief_update(belief, m, RocksampleModel::check_action(1), kRockObsGood, 1u << 10, rng);
  REQUIRE(updated.size() == 1u << 10);
  for (const RockState& p : updated.particles()) CHECK((p.value_bits & 1u) == 1u);

  Rng rng2(5);
  auto flipped =
      belief_update(belief, m, RocksampleModel::check_action(1), kRockObsBad, 1u << 10, rng2);
  for (const RockState& p : flipped.particles()) CHECK((p.value_bits & 1u) == 0u);
}

TEST_CASE("every refilled pocman particle explains the conditioning observation") {
  PocmanModel m = arena_model();
  // Scatter the ghost across the arena; the agent cell is shared.
  Rng scatter(6);
  std::vector<PocState> ps;
  for (int i = 0; i < 256; ++i) {
    PocState s;
    s.x = 5;
    s.y = 5;
    s.gx[0] = static_cast<uint8_t>(1 + scatter.uniform_int(11));
    s.gy[0] = static_cast<uint8_t>(1 + scatter.uniform_int(11));
    if (s.gx[0] == 5 && s.gy[0] == 5) s.gx[0] = 6;
    ps.push_back(s);
  }
  ps[0].gx[0] = 5;
  ps[0].gy[0] = 9;  // three cells north of the agent's destination

  ParticleBelief<PocState> belief(ps);
  PocState world = ps[0];
  Rng world_rng(7);
  StepResult sr = m.step(world, static_cast<int>(Dir::North), world_rng);
  REQUIRE_FALSE(sr.terminal);
  CHECK((sr.obs & (1u << 8)) != 0);  // chasing ghost closed to within earshot

  Rng rng(8);
  auto updated = belief_update(belief, m, static_cast<int>(Dir::North), sr.obs, 256, rng);
  REQUIRE(updated.size() == 256);
  for (const PocState& p : updated.particles()) {
    CHECK(poc_observe(m.maze(), p, 1) == sr.obs);
    int dist = std::abs(int(p.gx[0]) - int(p.x)) + std::abs(int(p.gy[0]) - int(p.y));
    CHECK(dist <= 2);  // the heard-ghost bit really constrains survivors
  }
}

TEST_CASE("impossible observations collapse the belief") {
  RocksampleModel m = tiny_model();
  Rng init(9);
  auto belief = initial_belief(m, 32, init);
  Rng rng(10);
  // Moves never produce a sensor reading, so conditioning on one must fail.
  CHECK_THROWS_AS(belief_update(belief, m, RocksampleModel::kNorth, kRockObsGood, 32, rng),
                  BeliefCollapse);

  ParticleBelief<RockState> empty;
  Rng rng2(11);
  CHECK_THROWS_AS(belief_update(empty, m, RocksampleModel::kNorth, kRockObsNone, 32, rng2),
                  std::invalid_argument);
}

TEST_CASE("updates are a pure function of the randomness stream") {
  RocksampleModel m = tiny_model();
  Rng init(12);
  auto belief = initial_belief(m, 128, init);
  Rng a(13), b(13);
  auto ua = belief_update(belief, m, RocksampleModel::check_action(2), kRockObsBad, 128, a);
  auto ub = belief_update(belief, m, RocksampleModel::check_action(2), kRockObsBad, 128, b);
  REQUIRE(ua.size() == ub.size());
  for (size_t i = 0; i < ua.size(); ++i) CHECK(ua.at(i) == ub.at(i));
}

TEST_CASE("initial beliefs draw independent hidden states") {
  RocksampleModel m = tiny_model();
  Rng rng(14);
  auto belief = initial_belief(m, 512, rng);
  std::map<uint32_t, int> histogram;
  for (const RockState& p : belief.particles()) ++histogram[p.value_bits];
  CHECK(histogram.size() == 4);  // all four value combinations appear
  for (auto [bits, count] : histogram) CHECK(count > 80);  // roughly uniform
}
