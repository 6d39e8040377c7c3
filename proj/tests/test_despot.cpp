#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "planwb/despot.hpp"
#include "planwb/despot_bounds.hpp"
#include "planwb/rules.hpp"

using namespace planwb;

namespace {

std::string fx(const char* rel) { return std::string(PLANWB_FIXTURES "/") + rel; }

RocksampleModel tiny_model() {
  RockConfig cfg;
  cfg.n = 2;
  cfg.m = 2;
  cfg.agent_start = {{0, 0}};
  cfg.rock_positions = {{0, 1}, {1, 1}};
  return RocksampleModel(cfg, 0);
}

RockState state_at(int x, int y, uint32_t value_bits = 0, uint32_t sampled_bits = 0) {
  RockState s;
  s.x = static_cast<uint8_t>(x);
  s.y = static_cast<uint8_t>(y);
  s.value_bits = value_bits;
  s.sampled_bits = sampled_bits;
  return s;
}

ParticleBelief<RockState> belief_of(const RockState& s, size_t count) {
  return ParticleBelief<RockState>(std::vector<RockState>(count, s));
}

// Guide stub for synthetic models: nothing entailed, uniform rollouts.
template <class S>
struct UniformGuide {
  std::vector<double> w;
  explicit UniformGuide(int actions)
      : w(static_cast<size_t>(actions), 1.0 / static_cast<double>(actions)) {}
  void begin_plan(const ParticleBelief<S>&) {}
  std::span<const int> entailed(const S&) { return {}; }
  std::span<const int> preferred(const S&) { return {}; }
  std::span<const double> weights(const S&, WeightKind) { return w; }
  void on_executed(int, Obs) {}
};

// One action, one step: pays 1 and ends. The search should close the root
// gap to zero after a single expansion.
struct OneShotModel {
  using State = int;
  int action_count() const { return 1; }
  asp::GAtom action_atom(int) const { return asp::make_atom("go"); }
  double discount() const { return 0.95; }
  double max_reward() const { return 1.0; }
  std::string name() const { return "oneshot"; }
  State sample_initial(Rng&) const { return 0; }
  StepResult step(State&, int, Rng&) const { return {0, 1.0, true}; }
  void mutate(State&, Rng&) const {}
};

// Rewardless and never terminal: both bounds start at zero.
struct ZeroModel {
  using State = int;
  int action_count() const { return 3; }
  asp::GAtom action_atom(int a) const { return asp::make_atom("go", asp::Term::integer(a)); }
  double discount() const { return 0.9; }
  double max_reward() const { return 0.0; }
  std::string name() const { return "zero"; }
  State sample_initial(Rng&) const { return 0; }
  StepResult step(State&, int a, Rng&) const { return {static_cast<Obs>(a), 0.0, false}; }
  void mutate(State&, Rng&) const {}
};

// Every action pays 1 forever, identically; action values tie exactly, so
// only the subtree-size regularizer can separate them.
struct ConstModel {
  using State = int;
  int action_count() const { return 3; }
  asp::GAtom action_atom(int a) const { return asp::make_atom("go", asp::Term::integer(a)); }
  double discount() const { return 0.5; }
  double max_reward() const { return 1.0; }
  std::string name() const { return "const"; }
  State sample_initial(Rng&) const { return 0; }
  StepResult step(State&, int, Rng&) const { return {0, 1.0, false}; }
  void mutate(State&, Rng&) const {}
};

bool non_increasing(const std::vector<double>& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-9) return false;
  return true;
}

}  // namespace

TEST_CASE("trivial upper bound is the max-reward annuity") {
  CHECK(upper_bound_trivial(10.0, 0.95) == doctest::Approx(200.0).epsilon(1e-9));
  CHECK(upper_bound_trivial(1000.0, 0.95) == doctest::Approx(20000.0).epsilon(1e-9));
  CHECK(upper_bound_trivial(1.0, 0.5) == doctest::Approx(2.0));
  CHECK(upper_bound_trivial(0.0, 0.9) == 0.0);
}

TEST_CASE("rocksample hindsight bound tours the valuable rocks then exits") {
  RocksampleModel m = tiny_model();
  const double g = m.discount();

  SUBCASE("nothing valuable leaves only the discounted exit") {
    CHECK(rocksample_hindsight_bound(m, state_at(0, 0)) == doctest::Approx(g * 10.0));
    CHECK(rocksample_hindsight_bound(m, state_at(1, 0)) == doctest::Approx(10.0));
    CHECK(rocksample_hindsight_bound(m, state_at(1, 1)) == doctest::Approx(10.0));
  }
  SUBCASE("sampled rocks no longer count") {
    CHECK(rocksample_hindsight_bound(m, state_at(0, 0, 0b11, 0b11)) ==
          doctest::Approx(g * 10.0));
  }
  SUBCASE("standing on the one valuable rock") {
    // Sample immediately, then walk one east and exit.
    double expect = 10.0 + std::pow(g, 2) * 10.0;
    CHECK(rocksample_hindsight_bound(m, state_at(0, 1, 0b01)) == doctest::Approx(expect));
  }
  SUBCASE("two valuable rocks from the start corner") {
    // Tour: north (arrive rock 1 at t=1), sample, east (rock 2 at t=3),
    // sample, exit east at t=5... the exit move itself lands at t=4.
    double expect = std::pow(g, 1) * 10.0 + std::pow(g, 3) * 10.0 + std::pow(g, 4) * 10.0;
    CHECK(rocksample_hindsight_bound(m, state_at(0, 0, 0b11)) == doctest::Approx(expect));
  }
  SUBCASE("more valuable rocks never lower the bound") {
    double none = rocksample_hindsight_bound(m, state_at(0, 0, 0b00));
    double one = rocksample_hindsight_bound(m, state_at(0, 0, 0b01));
    double two = rocksample_hindsight_bound(m, state_at(0, 0, 0b11));
    CHECK(one > none);
    CHECK(two > one);
  }
}

TEST_CASE("pocman hindsight bound scores pellets at straight-line distances") {
  Maze maze = Maze::parse(
      "#######\n"
      "#.....#\n"
      "#.P.G.#\n"
      "#.....#\n"
      "#######\n");
  PocConfig cfg;
  cfg.ghosts = 0;
  cfg.rho_food = 0.0;
  PocmanModel m(maze, cfg);
  const double g = cfg.gamma;

  PocState s;
  s.x = 2;
  s.y = 2;

  SUBCASE("no food leaves the one-step-discounted clear bonus") {
    CHECK(pocman_hindsight_bound(m, s) == doctest::Approx(g * 1000.0));
    CHECK(pocman_hindsight_bound(m, s) == doctest::Approx(950.0));
  }
  SUBCASE("one pellet three cells away") {
    PocState t = s;
    t.food.set(static_cast<size_t>(maze.index(5, 2)));
    double expect = std::pow(g, 4) * 1.0 + std::pow(g, 4) * 1000.0;
    CHECK(pocman_hindsight_bound(m, t) == doctest::Approx(expect));
    CHECK(pocman_hindsight_bound(m, t) == doctest::Approx(815.3).epsilon(1e-3));
  }
  SUBCASE("pellet underfoot still costs the step to eat it") {
    PocState t = s;
    t.food.set(static_cast<size_t>(maze.index(2, 2)));
    CHECK(pocman_hindsight_bound(m, t) == doctest::Approx(g * 1.0 + g * 1000.0));
  }
  SUBCASE("clear bonus lands after the farthest pellet") {
    PocState t = s;
    t.food.set(static_cast<size_t>(maze.index(3, 2)));  // d=1
    t.food.set(static_cast<size_t>(maze.index(5, 2)));  // d=3
    double expect = std::pow(g, 2) * 1.0 + std::pow(g, 4) * 1.0 + std::pow(g, 4) * 1000.0;
    CHECK(pocman_hindsight_bound(m, t) == doctest::Approx(expect));
  }
}

TEST_CASE("despot rejects a hindsight configuration without a bound function") {
  RocksampleModel model = tiny_model();
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_fig3.lp"));
  RockGuide guide(model, &rules);
  DespotConfig cfg;
  cfg.upper = DespotUpperKind::Hindsight;
  using Planner = DespotPlanner<RocksampleModel, RockGuide>;
  CHECK_THROWS_AS(Planner(model, guide, cfg), std::invalid_argument);
}

TEST_CASE("zero planning budget returns the bare default-policy action") {
  RocksampleModel model = tiny_model();
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_fig3.lp"));

  DespotConfig cfg;
  cfg.max_trials = 0;
  cfg.time_budget_s = 0.0;

  // Balanced belief: every rock valuable in exactly half the particles.
  std::vector<RockState> ps;
  for (uint32_t i = 0; i < 64; ++i) ps.push_back(state_at(0, 0, i % 4));
  ParticleBelief<RockState> belief(std::move(ps));

  SUBCASE("trivial kind echoes the configured action") {
    RockGuide guide(model, &rules);
    cfg.lower = DespotLowerKind::Trivial;
    cfg.trivial_action = 3;
    DespotPlanner<RocksampleModel, RockGuide> planner(model, guide, cfg);
    CHECK(planner.plan(belief, 1) == 3);
  }
  SUBCASE("rule kind takes the highest strict weight") {
    RockGuide guide(model, &rules);
    cfg.lower = DespotLowerKind::Asp;
    DespotPlanner<RocksampleModel, RockGuide> planner(model, guide, cfg);
    // At the start corner with 50/50 guesses the rules entail check(1) alone.
    CHECK(planner.plan(belief, 1) == RocksampleModel::check_action(1));
  }
  SUBCASE("baseline kind takes the first preferred action") {
    RockGuide guide(model, &rules);
    cfg.lower = DespotLowerKind::PreferredStub;
    DespotPlanner<RocksampleModel, RockGuide> planner(model, guide, cfg);
    CHECK(planner.plan(belief, 1) == RocksampleModel::kNorth);
  }
}

TEST_CASE("an agent on a believed-valuable lone rock defaults to sampling") {
  RockConfig rc;
  rc.n = 3;
  rc.m = 1;
  rc.agent_start = {{1, 1}};
  rc.rock_positions = {{1, 1}};
  RocksampleModel model(rc, 0);
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_good.lp"));
  RockGuide guide(model, &rules);

  // 61 of 64 particles valuable: the guess discretizes to 95.
  std::vector<RockState> ps;
  for (uint32_t i = 0; i < 64; ++i) ps.push_back(state_at(1, 1, i < 61 ? 1 : 0));
  ParticleBelief<RockState> belief(std::move(ps));

  DespotConfig cfg;
  cfg.max_trials = 0;
  cfg.time_budget_s = 0.0;
  cfg.lower = DespotLowerKind::Asp;
  DespotPlanner<RocksampleModel, RockGuide> planner(model, guide, cfg);
  CHECK(planner.plan(belief, 1) == RocksampleModel::kSample);

  auto w = planner.guide().weights(belief.at(0), WeightKind::Strict);
  CHECK(w[RocksampleModel::kSample] == doctest::Approx(1.0));
}

TEST_CASE("single-action domain converges in one expansion") {
  OneShotModel model;
  UniformGuide<int> guide(model.action_count());
  DespotConfig cfg;
  cfg.scenarios = 16;
  cfg.max_trials = 5;
  cfg.lower = DespotLowerKind::Trivial;
  DespotPlanner<OneShotModel, UniformGuide<int>> planner(model, guide, cfg);

  ParticleBelief<int> belief(std::vector<int>(8, 0));
  CHECK(planner.plan(belief, 3) == 0);
  CHECK(planner.root_lower() == doctest::Approx(1.0));
  CHECK(planner.root_upper() == doctest::Approx(1.0));
  CHECK(planner.tree_size() == 2);  // root plus the one terminal bundle
  CHECK(planner.partitions_consistent());
  CHECK(planner.root_eps_history().back() <= cfg.eps0);
  CHECK(planner.bound_violations() == 0);
  CHECK(planner.eps_increases() == 0);
}

TEST_CASE("a zero-width root gap skips the search entirely") {
  ZeroModel model;
  UniformGuide<int> guide(model.action_count());
  DespotConfig cfg;
  cfg.scenarios = 8;
  cfg.max_trials = 50;
  cfg.lower = DespotLowerKind::Trivial;
  cfg.trivial_action = 2;
  DespotPlanner<ZeroModel, UniformGuide<int>> planner(model, guide, cfg);

  ParticleBelief<int> belief(std::vector<int>(4, 0));
  CHECK(planner.plan(belief, 9) == 2);  // falls back to the default action
  CHECK(planner.tree_size() == 1);      // nothing was ever expanded
  CHECK(planner.root_eps_history().size() == 1);
  CHECK(planner.root_eps_history().front() == doctest::Approx(0.0));
}

TEST_CASE("exact value ties are broken toward the smaller subtree") {
  ConstModel model;
  UniformGuide<int> guide(model.action_count());
  DespotConfig cfg;
  cfg.scenarios = 8;
  cfg.max_trials = 10;
  cfg.eps0 = 1e-12;
  cfg.depth_cap = 6;
  cfg.lower = DespotLowerKind::Asp;  // uniform stub weights
  ParticleBelief<int> belief(std::vector<int>(4, 0));

  // All action values tie exactly; the explored branch hangs a large subtree
  // under action 0, so the size penalty moves the choice to action 1.
  cfg.lambda = 0.01;
  DespotPlanner<ConstModel, UniformGuide<int>> reg(model, guide, cfg);
  CHECK(reg.plan(belief, 5) == 1);
  CHECK(reg.eps_increases() == 0);
  CHECK(reg.partitions_consistent());

  cfg.lambda = 0.0;
  DespotPlanner<ConstModel, UniformGuide<int>> plain(model, guide, cfg);
  CHECK(plain.plan(belief, 5) == 0);  // pure tie falls to the lowest index
}

TEST_CASE("a known-worthless field plans straight for the exit") {
  RocksampleModel model = tiny_model();
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_fig3.lp"));
  RockGuide guide(model, &rules);

  DespotConfig cfg;
  cfg.scenarios = 16;
  cfg.max_trials = 50;
  cfg.depth_cap = 10;
  cfg.lower = DespotLowerKind::Trivial;
  cfg.trivial_action = RocksampleModel::kEast;
  cfg.upper = DespotUpperKind::Hindsight;
  DespotPlanner<RocksampleModel, RockGuide> planner(
      model, guide, cfg, [&](const RockState& s) { return rocksample_hindsight_bound(model, s); });

  // Every particle already knows both rocks are worthless: the east-bound
  // default policy and the hindsight tour agree exactly, so the gap starts
  // closed and planning stops before the first trial.
  ParticleBelief<RockState> belief = belief_of(state_at(0, 0), 8);
  CHECK(planner.plan(belief, 21) == RocksampleModel::kEast);
  CHECK(planner.tree_size() == 1);
  CHECK(planner.root_lower() == doctest::Approx(9.5));
  CHECK(planner.root_upper() == doctest::Approx(9.5));
  CHECK(planner.root_eps_history().back() <= cfg.eps0);
}

TEST_CASE("rocksample search keeps its bound invariants") {
  RocksampleModel model = tiny_model();
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_fig3.lp"));
  RockGuide guide(model, &rules);

  DespotConfig cfg;
  cfg.scenarios = 64;
  cfg.max_trials = 40;
  cfg.depth_cap = 12;
  cfg.lower = DespotLowerKind::Asp;
  cfg.upper = DespotUpperKind::Hindsight;
  DespotPlanner<RocksampleModel, RockGuide> planner(
      model, guide, cfg, [&](const RockState& s) { return rocksample_hindsight_bound(model, s); });

  Rng rng(5);
  ParticleBelief<RockState> belief = initial_belief(model, 256, rng);
  int action = planner.plan(belief, 99);

  CHECK(action >= 0);
  CHECK(action < model.action_count());
  CHECK(planner.tree_size() > 1);
  CHECK(planner.bound_violations() == 0);
  CHECK(planner.eps_increases() == 0);
  CHECK(planner.root_lower() <= planner.root_upper() + 1e-12);
  CHECK(planner.root_upper() <= upper_bound_trivial(10.0, model.discount()) + 1e-9);
  CHECK(non_increasing(planner.root_eps_history()));
  CHECK(planner.partitions_consistent());
}

TEST_CASE("same seed and belief reproduce the identical search") {
  RocksampleModel model = tiny_model();
  asp::RuleSet rules = asp::load_rules(fx("rules/rocksample_fig3.lp"));

  DespotConfig cfg;
  cfg.scenarios = 32;
  cfg.max_trials = 25;
  cfg.depth_cap = 10;
  cfg.lower = DespotLowerKind::Asp;

  Rng rng(5);
  ParticleBelief<RockState> belief = initial_belief(model, 128, rng);

  RockGuide g1(model, &rules);
  RockGuide g2(model, &rules);
  DespotPlanner<RocksampleModel, RockGuide> p1(model, g1, cfg);
  DespotPlanner<RocksampleModel, RockGuide> p2(model, g2, cfg);

  int a1 = p1.plan(belief, 77);
  int a2 = p2.plan(belief, 77);
  CHECK(a1 == a2);
  CHECK(p1.tree_size() == p2.tree_size());
  CHECK(p1.root_eps_history() == p2.root_eps_history());

  // Replanning on the same instance is equally deterministic.
  int a3 = p1.plan(belief, 77);
  CHECK(a3 == a1);
  CHECK(p1.root_eps_history() == p2.root_eps_history());
}

TEST_CASE("pocman search runs clean on the small maze") {
  Maze maze = Maze::load(fx("mazes/micro.maze"));
  PocConfig pc;
  pc.ghosts = 2;
  pc.rho_food = 0.5;
  PocmanModel model(maze, pc);
  asp::RuleSet rules = asp::load_rules(fx("rules/pocman.lp"));
  PocGuide guide(model, &rules);

  DespotConfig cfg;
  cfg.scenarios = 32;
  cfg.max_trials = 15;
  cfg.depth_cap = 6;
  cfg.lower = DespotLowerKind::Asp;
  cfg.upper = DespotUpperKind::Hindsight;
  DespotPlanner<PocmanModel, PocGuide> planner(
      model, guide, cfg, [&](const PocState& s) { return pocman_hindsight_bound(model, s); });

  Rng rng(7);
  ParticleBelief<PocState> belief = initial_belief(model, 64, rng);
  int action = planner.plan(belief, 11);

  CHECK(action >= 0);
  CHECK(action < kDirCount);
  CHECK(planner.bound_violations() == 0);
  CHECK(planner.eps_increases() == 0);
  CHECK(non_increasing(planner.root_eps_history()));
  CHECK(planner.partitions_consistent());
}
