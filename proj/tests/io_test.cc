// Copyright 2026 The bibce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bibce/io.h"
#include "test_games.h"

namespace bibce {
namespace {

using testing::RandomGame;
using testing::RandomSmallGame;

Document Reparse(const Json& value) { return ParseDocument(value.dump(2), "mem"); }

const char* kShorthand = R"({
  "players": ["1", "2"],
  "actions": [["a", "b"], ["a", "b"]],
  "types": [["t"], ["t"]],
  "payoff_states": ["x", "y"],
  "prior": [
    {"types": ["t", "t"], "state": "x", "prob": "1/3"},
    {"types": ["t", "t"], "state": "y", "prob": "2/3"}
  ],
  "payoffs": [
    [{"action_profile": ["a", "a"], "own_state": "x", "value": 1},
     {"action_profile": ["b", "b"], "own_state": "y", "value": "1/2"}],
    []
  ]
})";

TEST_CASE("common states expand to the diagonal") {
  GameDocument doc = GameFromDocument(ParseDocument(kShorthand, "g.json"));
  CHECK(doc.violations.empty());
  const Game& g = doc.game;
  CHECK(g.NumStates(0) == 2);
  CHECK(g.NumStates(1) == 2);
  CHECK(g.PriorOf({{0, 0}, {1, 1}}) == MakeRational(2, 3));
  CHECK(g.Payoff(0, g.Encode({1, 1}), 1) == MakeRational(1, 2));
  CHECK(g.Payoff(1, g.Encode({1, 1}), 1) == 0);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    ParseDocument("{\n  \"players\": [\"1\",\n  ]\n}", "bad.json");
    FAIL("no error");
  } catch (const DocumentError& e) {
    CHECK(std::string(e.what()).rfind("bad.json:3:", 0) == 0);
  }
}

TEST_CASE("dangling keys are anchored violations") {
  std::string text = kShorthand;
  text.replace(text.find("\"own_state\": \"y\""), 16, "\"own_state\": \"z\"");
  GameDocument doc = GameFromDocument(ParseDocument(text, "g.json"));
  REQUIRE(doc.violations.size() == 1);
  CHECK(doc.violations[0].find("g.json:12:") == 0);
  CHECK(doc.violations[0].find("dangling state key 'z'") != std::string::npos);
}

TEST_CASE("missing fields throw with the owning location") {
  std::string text = kShorthand;
  text.replace(text.find("\"prob\": \"2/3\""), 13, "\"p\": \"2/3\"");
  try {
    GameFromDocument(ParseDocument(text, "g.json"));
    FAIL("no error");
  } catch (const DocumentError& e) {
    CHECK(std::string(e.what()).find("g.json:8:") == 0);
    CHECK(std::string(e.what()).find("missing field 'prob'") != std::string::npos);
  }
}

TEST_CASE("negative prior mass is a violation") {
  std::string text = kShorthand;
  text.replace(text.find("\"1/3\""), 5, "\"-1/3\"");
  GameDocument doc = GameFromDocument(ParseDocument(text, "g.json"));
  CHECK_FALSE(doc.violations.empty());
}

TEST_CASE("games round-trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Game g = RandomSmallGame(rng);
    GameDocument back = GameFromDocument(Reparse(GameToJson(g)));
    CHECK(back.violations.empty());
    CHECK(back.game == g);
    CHECK(HashGame(back.game) == HashGame(g));
  }
  Game three = RandomGame(rng, 3, {2, 2, 3}, {1, 2, 1}, {2, 1, 1});
  CHECK(GameFromDocument(Reparse(GameToJson(three))).game == three);
}

TEST_CASE("hash separates different games") {
  Game g = MotivatingExample();
  Game h = g;
  h.SetPayoff(0, 0, 0, 7);
  CHECK(HashGame(g) != HashGame(h));
  CHECK(HashGame(g).size() == 16);
}

TEST_CASE("rules round-trip including the off-support bucket") {
  Game g = MotivatingExample();
  DistributionalRule rule = QuarterCellsRule(g);
  CHECK(RuleFromDocument(g, Reparse(RuleToJson(g, rule))) == rule);
  ElaborationWitness w = EmailGameFamily(MakeRational(1, 10), 6);
  SurvivorSets s = IteratedStrictDominance(w.perturbed);
  PureProfile pure(2);
  for (int i = 0; i < 2; ++i) {
    for (const auto& set : s[i]) pure[i].push_back(set.front());
  }
  DistributionalRule pushed = Pushforward(RuleFromPure(w.perturbed, pure), w.tau, w.phi);
  CHECK(RuleFromDocument(g, Reparse(RuleToJson(g, pushed))) == pushed);
}

TEST_CASE("coverings, F and potentials round-trip") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), 5);
  Covering c = MonotoneCovering(gg.game);
  Covering back = CoveringFromDocument(gg.game, Reparse(CoveringToJson(gg.game, c)));
  CHECK(back.sets == c.sets);
  GeneralizedPotential f = FromMonotonePotential(gg.game, gg.potential);
  GeneralizedPotential f2 = GpFromDocument(gg.game, c, Reparse(GpToJson(gg.game, f)));
  CHECK(f2.f == f.f);
  CHECK(f2.states == f.states);
  PotentialFunction v = PotentialFromDocument(gg.game, Reparse(PotentialToJson(gg.game, gg.potential)));
  CHECK(v.v == gg.potential.v);
}

TEST_CASE("a covering missing an action is rejected") {
  Game g = MotivatingExample();
  Document bad = ParseDocument(R"({"covering": [[["alpha"]], [["alpha", "beta"]]]})", "c");
  CHECK_THROWS_AS(CoveringFromDocument(g, bad), DocumentError);
  Document dangling =
      ParseDocument(R"({"covering": [[["alpha", "gamma"]], [["alpha", "beta"]]]})", "c");
  CHECK_THROWS_WITH_AS(CoveringFromDocument(g, dangling),
                       doctest::Contains("dangling action key 'gamma'"), DocumentError);
}

TEST_CASE("type maps round-trip") {
  ElaborationWitness w = RandomEpsilonElaboration(MotivatingExample(), MakeRational(1, 20), 4);
  TypeMap tau = TypeMapFromDocument(w.perturbed, w.base,
                                    Reparse(TypeMapToJson(w.perturbed, w.base, w.tau)));
  CHECK(tau.map == w.tau.map);
}

TEST_CASE("certificates serialize with exact rationals") {
  ElaborationWitness w = EmailGameFamily(MakeRational(1, 10), 8);
  Json cert = CertificateToJson(w.perturbed, EpsilonOf(w.base, w.perturbed, w.tau));
  CHECK(ParseRational(cert["epsilon"].get<std::string>()) == w.epsilon);
  CHECK(cert["players"].size() == 2);
}

}  // namespace
}  // namespace bibce
