#include <initializer_list>
#include <numeric>
#include <string>

#include "doctest.h"
#include "planwb/weights.hpp"

using namespace planwb::asp;

namespace {

std::string fx(const char* name) {
  return std::string(PLANWB_FIXTURES "/rules/") + name;
}

FactBank bank_of(std::initializer_list<const char*> atoms) {
  FactBank b;
  for (const char* s : atoms) b.add(parse_gatom(s));
  return b;
}

// Rocksample solver order: north, south, east, west, sample, check(1..M).
ActionSpace rocksample_space(int rocks) {
  ActionSpace s;
  for (const char* m : {"north", "south", "east", "west"}) s.actions.push_back(make_atom(m));
  s.actions.push_back(make_atom("sample"));
  for (int r = 1; r <= rocks; ++r)
    s.actions.push_back(make_atom("check", Term::integer(r)));
  s.atom_aliases.emplace_back(make_atom("exit"), 2);              // exit plays east
  s.pred_aliases.emplace_back(Symbols::intern("sample"), 4);      // sample(R) -> sample
  return s;
}

ActionSpace pocman_space() {
  ActionSpace s;
  int i = 0;
  for (const char* m : {"north", "south", "east", "west"}) {
    s.actions.push_back(make_atom(m));
    s.atom_aliases.emplace_back(make_atom("move", Term::symbol(m)), i++);
  }
  return s;
}

FactBank two_rock_t2() {
  return bank_of({"guess(1,80)", "guess(2,50)", "dist(1,1)", "dist(2,2)", "delta_x(1,0)",
                  "delta_x(2,1)", "delta_y(1,1)", "delta_y(2,1)", "num_sampled(0)"});
}
FactBank two_rock_t3() {
  return bank_of({"guess(1,80)", "guess(2,50)", "dist(1,0)", "dist(2,1)", "delta_x(1,0)",
                  "delta_x(2,1)", "delta_y(1,0)", "delta_y(2,0)", "num_sampled(0)"});
}

}  // namespace

TEST_CASE("action atoms and aliases resolve to solver indices") {
  ActionSpace s = rocksample_space(2);
  CHECK(s.index_of(parse_gatom("north")) == 0);
  CHECK(s.index_of(parse_gatom("check(2)")) == 6);
  CHECK(s.index_of(parse_gatom("exit")) == 2);
  CHECK(s.index_of(parse_gatom("sample(1)")) == 4);
  CHECK(s.index_of(parse_gatom("sample")) == 4);
  CHECK_FALSE(s.index_of(parse_gatom("target(1)")).has_value());
  CHECK(s.preds().size() == 7);  // north south east west sample check exit
}

TEST_CASE("soft weights follow coverage for entailed actions and the minimum otherwise") {
  RuleSet rs = load_rules(fx("rocksample_fig3.lp"));
  ActionSpace space = rocksample_space(2);
  auto w = rollout_weights(rs, two_rock_t2(), space, GuideMode::Soft);
  REQUIRE(w.size() == 7);
  // Entailed: north (coverage 100) and check(2) (coverage 66 = the minimum).
  CHECK(w[0] == doctest::Approx(100.0 / 496.0).epsilon(1e-12));
  for (size_t i = 1; i < w.size(); ++i)
    CHECK(w[i] == doctest::Approx(66.0 / 496.0).epsilon(1e-12));
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("strict weights split coverage across entailed actions only") {
  RuleSet rs = load_rules(fx("rocksample_fig3.lp"));
  ActionSpace space = rocksample_space(2);
  auto w = rollout_weights(rs, two_rock_t3(), space, GuideMode::Strict);
  REQUIRE(w.size() == 7);
  CHECK(w[4] == doctest::Approx(100.0 / 166.0).epsilon(1e-12));  // sample(1)
  CHECK(w[6] == doctest::Approx(66.0 / 166.0).epsilon(1e-12));   // check(2)
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);
  CHECK(w[2] == 0.0);
  CHECK(w[3] == 0.0);
  CHECK(w[5] == 0.0);
}

TEST_CASE("an entailed minimum-coverage action flattens soft weights to uniform") {
  RuleSet rs = load_rules(fx("rocksample_fig3.lp"));
  FactBank t1 = bank_of({"guess(1,50)", "guess(2,50)", "dist(1,1)", "dist(2,2)",
                         "delta_x(1,0)", "delta_x(2,1)", "delta_y(1,1)", "delta_y(2,1)",
                         "num_sampled(0)"});
  auto w = rollout_weights(rs, t1, rocksample_space(2), GuideMode::Soft);
  for (double v : w) CHECK(v == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("strict mode with nothing entailed falls back to uniform") {
  RuleSet rs = load_rules(fx("rocksample_fig3.lp"));
  FactBank f = bank_of({"guess(1,90)"});
  CHECK(entailed_actions(rs, f, rocksample_space(2)).empty());
  auto w = rollout_weights(rs, f, rocksample_space(2), GuideMode::Strict);
  for (double v : w) CHECK(v == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("exit entailment is credited to the east action with its own coverage") {
  RuleSet rs = load_rules(fx("rocksample_good.lp"));
  FactBank f = bank_of({"guess(1,30)", "dist(1,3)", "delta_x(1,3)", "delta_y(1,0)",
                        "num_sampled(50)"});
  ActionSpace space = rocksample_space(1);
  auto acts = entailed_actions(rs, f, space);
  REQUIRE(acts.size() == 1);
  CHECK(acts[0] == 2);  // east, via the exit alias

  auto w = rollout_weights(rs, f, space, GuideMode::Soft);
  // east scores the exit coverage 84; the other five actions score min 57.
  REQUIRE(w.size() == 6);
  CHECK(w[2] == doctest::Approx(84.0 / (84.0 + 5 * 57.0)).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(57.0 / (84.0 + 5 * 57.0)).epsilon(1e-12));

  auto ws = rollout_weights(rs, f, space, GuideMode::Strict);
  CHECK(ws[2] == doctest::Approx(1.0));
  CHECK(ws[0] == 0.0);
}

TEST_CASE("direction-valued heads map onto the four movement actions") {
  RuleSet rs = load_rules(fx("pocman.lp"));
  FactBank f = bank_of({"ghost(north,3,20)", "ghost(south,2,80)", "ghost(west,1,0)",
                        "ghost(east,6,50)", "wall(west)"});
  ActionSpace space = pocman_space();
  auto acts = entailed_actions(rs, f, space);
  REQUIRE(acts.size() == 2);
  CHECK(acts[0] == 0);  // north
  CHECK(acts[1] == 2);  // east

  // All four actions inherit the single coverage entry, so soft weights are
  // uniform while strict splits across the entailed pair.
  auto soft = rollout_weights(rs, f, space, GuideMode::Soft);
  for (double v : soft) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
  auto strict = rollout_weights(rs, f, space, GuideMode::Strict);
  CHECK(strict[0] == doctest::Approx(0.5));
  CHECK(strict[1] == 0.0);
  CHECK(strict[2] == doctest::Approx(0.5));
  CHECK(strict[3] == 0.0);
}

TEST_CASE("an empty rule set yields uniform weights in both modes") {
  RuleSet rs;
  FactBank f = bank_of({"guess(1,50)"});
  for (GuideMode m : {GuideMode::Soft, GuideMode::Strict}) {
    auto w = rollout_weights(rs, f, rocksample_space(2), m);
    for (double v : w) CHECK(v == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
}
