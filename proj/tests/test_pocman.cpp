#include <cstdlib>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include "doctest.h"
#include "planwb/belief.hpp"
#include "planwb/pocman.hpp"

using namespace planwb;

namespace {

std::string fixture(const char* name) { return std::string(PLANWB_FIXTURES "/mazes/") + name; }

// 7x5 open room with the spawns placed mid-row.
const char* kRoom =
    "#######\n"
    "#.....#\n"
    "#.P.G.#\n"
    "#.....#\n"
    "#######\n";

PocConfig quiet_config() {
  PocConfig cfg;
  cfg.ghosts = 0;
  cfg.rho_food = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("maze parsing flips rows so y grows upward") {
  Maze m = Maze::parse(
      "###\n"
      "#P#\n"
      "#G#\n"
      "###\n");
  CHECK(m.width() == 3);
  CHECK(m.height() == 4);
  CHECK(m.agent_spawn() == std::make_pair(1, 2));
  REQUIRE(m.ghost_spawns().size() == 1);
  CHECK(m.ghost_spawns()[0] == std::make_pair(1, 1));
  CHECK(m.floor_count() == 2);
  CHECK(m.connected());
  CHECK(m.wall(0, 0));
  CHECK_FALSE(m.wall(1, 1));
  CHECK(m.wall(-1, 2));  // out of bounds counts as wall
  CHECK(m.wall(3, 2));
}

TEST_CASE("maze parsing rejects malformed layouts") {
  CHECK_THROWS_AS(Maze::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Maze::parse("###\n#P#\n##\n"), std::invalid_argument);    // ragged
  CHECK_THROWS_AS(Maze::parse("###\n#P#\n#P#\n###\n"), std::invalid_argument);  // two agents
  CHECK_THROWS_AS(Maze::parse("###\n#.#\n###\n"), std::invalid_argument);   // no agent
  CHECK_THROWS_AS(Maze::parse("###\n#X#\n###\n"), std::invalid_argument);   // bad char
}

TEST_CASE("shipped mazes are well formed") {
  Maze micro = Maze::load(fixture("micro.maze"));
  CHECK(micro.width() == 10);
  CHECK(micro.height() == 10);
  CHECK(micro.ghost_spawns().size() == 2);
  CHECK(micro.connected());

  Maze full = Maze::load(fixture("full.maze"));
  CHECK(full.width() == 17);
  CHECK(full.height() == 19);
  CHECK(full.ghost_spawns().size() == 4);
  CHECK(full.connected());
  CHECK(full.width() * full.height() <= kMaxMazeCells);
}

TEST_CASE("initial states follow the food density and fixture spawns") {
  Maze maze = Maze::load(fixture("micro.maze"));
  PocConfig cfg;
  cfg.ghosts = 2;

  SUBCASE("no food when the density is zero") {
    cfg.rho_food = 0.0;
    PocmanModel m(maze, cfg);
    Rng rng(1);
    PocState s = m.sample_initial(rng);
    CHECK(s.food.none());
    CHECK(std::make_pair(int(s.x), int(s.y)) == maze.agent_spawn());
    for (int g = 0; g < 2; ++g)
      CHECK(std::make_pair(int(s.gx[g]), int(s.gy[g])) == maze.ghost_spawns()[g]);
  }
  SUBCASE("full food when the density is one") {
    cfg.rho_food = 1.0;
    PocmanModel m(maze, cfg);
    Rng rng(2);
    PocState s = m.sample_initial(rng);
    CHECK(static_cast<int>(s.food.count()) == maze.floor_count());
  }
  SUBCASE("intermediate density lands near its expectation") {
    cfg.rho_food = 0.5;
    PocmanModel m(maze, cfg);
    Rng rng(3);
    int total = 0, draws = 200;
    for (int i = 0; i < draws; ++i) total += static_cast<int>(m.sample_initial(rng).food.count());
    double mean = static_cast<double>(total) / draws;
    CHECK(mean == doctest::Approx(0.5 * maze.floor_count()).epsilon(0.05));
  }
}

TEST_CASE("model rejects configs the maze cannot host") {
  Maze maze = Maze::parse("###\n#P#\n###\n");  // no ghost spawns
  PocConfig cfg;
  cfg.ghosts = 1;
  CHECK_THROWS_AS(PocmanModel(maze, cfg), std::invalid_argument);
  cfg.ghosts = kMaxGhosts + 1;
  CHECK_THROWS_AS(PocmanModel(maze, cfg), std::invalid_argument);
}

TEST_CASE("step rewards compose: wall bump, food, clear") {
  Maze maze = Maze::parse(kRoom);
  PocmanModel m(maze, quiet_config());
  Rng rng(4);

  PocState s;
  s.x = 2;
  s.y = 2;

  SUBCASE("bumping a wall stays put and pays the penalty") {
    s.y = 1;  // south neighbor is the border wall
    PocState before = s;
    StepResult r = m.step(s, static_cast<int>(Dir::South), rng);
    CHECK(r.reward == -101.0);
    CHECK_FALSE(r.terminal);
    CHECK(s.x == before.x);
    CHECK(s.y == before.y);
  }
  SUBCASE("plain move costs one") {
    StepResult r = m.step(s, static_cast<int>(Dir::East), rng);
    CHECK(r.reward == -1.0);
    CHECK_FALSE(r.terminal);
    CHECK(s.x == 3);
    CHECK(s.y == 2);
  }
  SUBCASE("eating one of several pellets nets zero") {
    s.food.set(static_cast<size_t>(maze.index(3, 2)));
    s.food.set(static_cast<size_t>(maze.index(5, 2)));
    StepResult r = m.step(s, static_cast<int>(Dir::East), rng);
    CHECK(r.reward == 0.0);
    CHECK_FALSE(r.terminal);
    CHECK_FALSE(s.food.test(static_cast<size_t>(maze.index(3, 2))));
    CHECK(s.food.test(static_cast<size_t>(maze.index(5, 2))));
  }
  SUBCASE("eating the last pellet clears the level") {
    s.food.set(static_cast<size_t>(maze.index(3, 2)));
    StepResult r = m.step(s, static_cast<int>(Dir::East), rng);
    CHECK(r.reward == 1000.0);  // +1 food +1000 clear -1 step
    CHECK(r.terminal);
    CHECK(s.food.none());
  }
}

TEST_CASE("ghost contact ends the episode") {
  PocConfig cfg = quiet_config();
  cfg.ghosts = 1;

  SUBCASE("cell swap in a dead-end corridor") {
    Maze maze = Maze::parse("####\n#PG#\n####\n");
    PocmanModel m(maze, cfg);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      PocState s = m.sample_initial(rng);
      StepResult r = m.step(s, static_cast<int>(Dir::East), rng);  // ghost must swap west
      CHECK(r.terminal);
      CHECK(r.reward == -101.0);
    }
  }
  SUBCASE("meeting in the middle") {
    Maze maze = Maze::parse("#####\n#P.G#\n#####\n");
    PocmanModel m(maze, cfg);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      PocState s = m.sample_initial(rng);
      StepResult r = m.step(s, static_cast<int>(Dir::East), rng);  // both enter (2,1)
      CHECK(r.terminal);
      CHECK(r.reward == -101.0);
    }
  }
}

TEST_CASE("ghosts chase when close and wander otherwise") {
  Maze maze = Maze::parse(kRoom);
  PocConfig cfg = quiet_config();
  cfg.ghosts = 1;
  cfg.chase_dist = 3;

  SUBCASE("a certain chaser always closes the gap") {
    cfg.rho_chase = 1.0;
    PocmanModel m(maze, cfg);
    for (uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      PocState s = m.sample_initial(rng);  // agent (2,2), ghost (4,2)
      m.step(s, static_cast<int>(Dir::West), rng);
      CHECK(int(s.gx[0]) == 3);  // the unique distance-minimizing move
      CHECK(int(s.gy[0]) == 2);
    }
  }
  SUBCASE("a never-chasing ghost visits every open neighbor") {
    cfg.rho_chase = 0.0;
    PocmanModel m(maze, cfg);
    std::set<std::pair<int, int>> landed;
    for (uint64_t seed = 0; seed < 64; ++seed) {
      Rng rng(seed);
      PocState s = m.sample_initial(rng);
      m.step(s, static_cast<int>(Dir::West), rng);
      landed.insert({int(s.gx[0]), int(s.gy[0])});
    }
    CHECK(landed == std::set<std::pair<int, int>>{{3, 2}, {5, 2}, {4, 1}, {4, 3}});
  }
  SUBCASE("an out-of-range ghost ignores the chase coin") {
    cfg.rho_chase = 1.0;
    cfg.chase_dist = 1;
    PocmanModel m(maze, cfg);
    std::set<std::pair<int, int>> landed;
    for (uint64_t seed = 0; seed < 64; ++seed) {
      Rng rng(seed);
      PocState s = m.sample_initial(rng);
      m.step(s, static_cast<int>(Dir::West), rng);
      landed.insert({int(s.gx[0]), int(s.gy[0])});
    }
    CHECK(landed.size() == 4);
  }
}

TEST_CASE("observation bits report walls, sight lines, sounds and smells") {
  Maze maze = Maze::parse(kRoom);

  PocState s;
  s.x = 1;
  s.y = 1;  // bottom-left open corner

  SUBCASE("corner feels exactly two walls") {
    Obs o = poc_observe(maze, s, 0);
    CHECK(o == ((1u << 5) | (1u << 7)));  // south and west walls, nothing else
  }
  SUBCASE("ghost on the same row is seen but too far to hear") {
    s.gx[0] = 4;
    s.gy[0] = 1;
    Obs o = poc_observe(maze, s, 1);
    CHECK((o & (1u << 2)) != 0);  // line of sight east
    CHECK((o & (1u << 8)) == 0);  // distance 3 > 2
  }
  SUBCASE("adjacent ghost is seen and heard") {
    s.gx[0] = 2;
    s.gy[0] = 1;
    Obs o = poc_observe(maze, s, 1);
    CHECK((o & (1u << 2)) != 0);
    CHECK((o & (1u << 8)) != 0);
  }
  SUBCASE("a diagonal ghost is heard but not seen") {
    s.gx[0] = 2;
    s.gy[0] = 2;
    Obs o = poc_observe(maze, s, 1);
    CHECK((o & 0xFu) == 0);
    CHECK((o & (1u << 8)) != 0);
  }
  SUBCASE("walls block the sight line") {
    Maze walled = Maze::parse("#####\n#P#G#\n#####\n");
    PocState t;
    t.x = 1;
    t.y = 1;
    t.gx[0] = 3;
    t.gy[0] = 1;
    Obs o = poc_observe(walled, t, 1);
    CHECK((o & 0xFu) == 0);
    CHECK((o & (1u << 8)) != 0);  // still within earshot
  }
  SUBCASE("food next door smells; two cells away does not") {
    s.food.set(static_cast<size_t>(maze.index(2, 1)));
    CHECK((poc_observe(maze, s, 0) & (1u << 9)) != 0);
    s.food.reset();
    s.food.set(static_cast<size_t>(maze.index(3, 1)));
    CHECK((poc_observe(maze, s, 0) & (1u << 9)) == 0);
  }
}

TEST_CASE("random play preserves the structural invariants") {
  Maze maze = Maze::load(fixture("micro.maze"));
  PocConfig cfg;
  cfg.ghosts = 2;
  PocmanModel m(maze, cfg);
  Rng rng(9);
  PocState s = m.sample_initial(rng);
  size_t food_before = s.food.count();
  for (int t = 0; t < 400; ++t) {
    int a = static_cast<int>(rng.uniform_int(kDirCount));
    StepResult r = m.step(s, a, rng);
    CHECK_FALSE(m.maze().wall(s.x, s.y));
    for (int g = 0; g < 2; ++g) CHECK_FALSE(m.maze().wall(s.gx[g], s.gy[g]));
    CHECK(s.food.count() <= food_before);
    food_before = s.food.count();
    CHECK(r.reward >= -201.0);  // bump and die in one step is the worst case
    CHECK(r.reward <= 1000.0);
    CHECK(r.obs < (1u << 10));
    if (r.terminal) {
      s = m.sample_initial(rng);
      food_before = s.food.count();
    }
  }
}

TEST_CASE("mutation teleports one ghost a single step") {
  Maze maze = Maze::load(fixture("micro.maze"));
  PocConfig cfg;
  cfg.ghosts = 2;
  PocmanModel m(maze, cfg);
  Rng rng(10);
  PocState s = m.sample_initial(rng);
  for (int i = 0; i < 50; ++i) {
    PocState before = s;
    m.mutate(s, rng);
    CHECK(s.x == before.x);
    CHECK(s.y == before.y);
    CHECK(s.food == before.food);
    int moved = 0, dist = 0;
    for (int g = 0; g < 2; ++g) {
      if (s.gx[g] != before.gx[g] || s.gy[g] != before.gy[g]) {
        ++moved;
        dist = std::abs(int(s.gx[g]) - int(before.gx[g])) +
               std::abs(int(s.gy[g]) - int(before.gy[g]));
      }
      CHECK_FALSE(m.maze().wall(s.gx[g], s.gy[g]));
    }
    CHECK(moved <= 1);
    if (moved == 1) CHECK(dist == 1);
  }
}
