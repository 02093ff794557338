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

#include "bibce/elaborations.h"
#include "bibce/equilibria.h"
#include "test_games.h"

namespace bibce {
namespace {

using testing::RandomBeliefInvariantDevice;
using testing::RandomSmallGame;

Rational ExpectedPayoff(const Game& g, const DistributionalRule& rule, int i) {
  Rational total = 0;
  for (const auto& [key, mass] : rule.mass) {
    total += mass * g.Payoff(i, key.action, key.cell.states[i]);
  }
  return total;
}

Game OnePlayer(std::vector<int> payoffs) {
  std::vector<std::string> actions;
  for (std::size_t a = 0; a < payoffs.size(); ++a) actions.push_back("a" + std::to_string(a));
  Game g({"1"}, {actions}, {{"t"}}, {{"s"}});
  for (std::size_t a = 0; a < payoffs.size(); ++a) g.SetPayoff(0, a, 0, payoffs[a]);
  g.AddPrior({{0}, {0}}, 1);
  return g;
}

TEST_CASE("dominant action is the unique BCE") {
  Game g = OnePlayer({0, 1});
  DistributionalRule rule = FindBce(g);
  CHECK(rule.mass.size() == 1);
  CHECK(rule.mass.begin()->first.action == 1);
  CHECK(rule.mass.begin()->second == 1);
}

TEST_CASE("quarter-cells rule is an obedient belief-invariant rule") {
  Game g = MotivatingExample();
  DistributionalRule t2 = QuarterCellsRule(g);
  CHECK(CheckBce(g, t2).empty());
  CHECK(CheckBibce(g, t2).empty());
  CHECK(ExpectedPayoff(g, t2, 0) == 1);
  CHECK(ExpectedPayoff(g, t2, 1) == 1);
}

TEST_CASE("uniform actions give a BCE with payoff one half") {
  Game g = MotivatingExample();
  DistributionalRule uniform;
  for (const auto& [cell, mass] : g.Prior()) {
    for (ActionIndex a = 0; a < 4; ++a) uniform.mass[{cell, a}] = mass / 4;
  }
  CHECK(CheckBce(g, uniform).empty());
  CHECK(ExpectedPayoff(g, uniform, 0) == MakeRational(1, 2));
  for (ActionIndex a = 0; a < 4; ++a) {
    for (int i = 0; i < 2; ++i) {
      CHECK(InterimPayoff(g, {{static_cast<int>(g.ActionOf(a, 0))},
                              {static_cast<int>(g.ActionOf(a, 1))}},
                          i, 0, g.ActionOf(a, i)) == MakeRational(1, 2));
    }
  }
}

TEST_CASE("state-revealing rule violates belief invariance") {
  Game g = MotivatingExample();
  DistributionalRule rule;
  rule.mass[{{{0, 0}, {0, 0}}, g.Encode({0, 0})}] = MakeRational(1, 2);
  rule.mass[{{{0, 0}, {1, 1}}, g.Encode({1, 1})}] = MakeRational(1, 2);
  CHECK(CheckRuleConsistency(g, rule).empty());
  CHECK_FALSE(CheckBeliefInvariance(g, rule).empty());
  CHECK_FALSE(CheckBibce(g, rule).empty());
}

TEST_CASE("every pure profile of the motivating game is a BNE and a BIBCE") {
  Game g = MotivatingExample();
  auto all = EnumeratePureBne(g);
  CHECK(all.size() == 4);
  for (const auto& pure : all) {
    CHECK(CheckBibce(g, RuleFromPure(g, pure)).empty());
  }
}

TEST_CASE("pure BNE enumeration refuses large instances") {
  Game g({"1", "2"}, {{"a", "b", "c", "d"}, {"a", "b"}}, {{"t"}, {"t"}}, {{"s"}, {"s"}});
  g.AddPrior({{0, 0}, {0, 0}}, 1);
  CHECK_THROWS_AS(EnumeratePureBne(g), BibceError);
}

TEST_CASE("random games: a BIBCE exists and is a BCE") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Game g = RandomSmallGame(rng);
    DistributionalRule rule = FindBibce(g);
    CHECK(CheckBibce(g, rule).empty());
    CHECK(CheckBce(g, rule).empty());
  }
}

TEST_CASE("extremal BNE of the global game") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), 60);
  PureProfile top = ExtremalBneSupermodular(gg.game, Extreme::kTop);
  PureProfile bottom = ExtremalBneSupermodular(gg.game, Extreme::kBottom);
  // All 1 is itself a BNE, so it is the largest one.
  CHECK(FromPureProfile(gg, top) == ThresholdProfile(gg, gg.depth + 2));
  CHECK(FromPureProfile(gg, bottom) == ThresholdProfile(gg, 0));
  CHECK(IsPureBne(gg.game, bottom));
  CHECK(IsPureBne(gg.game, ToPure(gg, ThresholdProfile(gg, 7))));
  CHECK(CheckBibce(gg.game, RuleFromPure(gg.game, top)).empty());
}

TEST_CASE("extremal BNE of a decision problem is the argmax") {
  Game g = OnePlayer({2, 5, 1});
  CHECK(ExtremalBneSupermodular(g, Extreme::kTop)[0][0] == 1);
  CHECK(ExtremalBneSupermodular(g, Extreme::kBottom)[0][0] == 1);
}

TEST_CASE("extremal BNE refuses non-supermodular games") {
  Game g({"1", "2"}, {{"h", "t"}, {"h", "t"}}, {{"x"}, {"x"}}, {{"s"}, {"s"}});
  g.AddPrior({{0, 0}, {0, 0}}, 1);
  for (ActionIndex a = 0; a < 4; ++a) {
    int match = g.ActionOf(a, 0) == g.ActionOf(a, 1) ? 1 : -1;
    g.SetPayoff(0, a, 0, match);
    g.SetPayoff(1, a, 0, -match);
  }
  CHECK_THROWS_AS(ExtremalBneSupermodular(g, Extreme::kTop), BibceError);
}

// Expected survivor of type `name` from the n mod 4 cycle.
int CycleAction(int player, int n) {
  static const int kCycle[4][2] = {{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  return kCycle[n % 4][player];
}

TEST_CASE("email elaboration: dominance yields the mod-4 cycle") {
  ElaborationWitness w = EmailGameFamily(MakeRational(1, 10), 12);
  const Game& g = w.perturbed;
  SurvivorSets survivors = IteratedStrictDominance(g);
  CHECK(survivors[0][g.FindType(0, "{0}")] == std::vector<int>{0});
  for (int n = 0; n < 12; ++n) {
    for (int i = 0; i < 2; ++i) {
      int t = g.FindType(i, EmailTypeName(i, n));
      CHECK(survivors[i][t] == std::vector<int>{CycleAction(i, n)});
    }
  }
  CHECK(survivors[0][g.FindType(0, "cap")].size() == 2);
  CHECK(IteratedStrictDominance(g, 5) == survivors);
}

TEST_CASE("no dominated actions keeps full sets") {
  Game g = MotivatingExample();
  SurvivorSets survivors = IteratedStrictDominance(g);
  CHECK(survivors[0][0].size() == 2);
  CHECK(survivors[1][0].size() == 2);
}

TEST_CASE("elimination order does not matter") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Game g = RandomSmallGame(rng);
    SurvivorSets rounds = IteratedStrictDominance(g);
    CHECK(IteratedStrictDominance(g, trial) == rounds);
    CHECK(IteratedStrictDominance(g, trial + 1000) == rounds);
  }
}

TEST_CASE("mixed dominance is detected") {
  // a2 is beaten by the half-half mixture of a0 and a1 only.
  Game g({"1", "2"}, {{"a0", "a1", "a2"}, {"l", "r"}}, {{"t"}, {"t"}}, {{"s"}, {"s"}});
  g.AddPrior({{0, 0}, {0, 0}}, 1);
  int u[3][2] = {{4, 0}, {0, 4}, {1, 1}};
  for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
    g.SetPayoff(0, a, 0, u[g.ActionOf(a, 0)][g.ActionOf(a, 1)]);
    g.SetPayoff(1, a, 0, 0);
  }
  SurvivorSets survivors = IteratedStrictDominance(g);
  CHECK(survivors[0][0] == std::vector<int>{0, 1});
}

TEST_CASE("outcome equivalence through the quarter-cells device") {
  Game g = MotivatingExample();
  CHECK(OutcomeEquivalent(QuarterCellsRule(g), IdentityTypeMap(g), StateMapByName(g, g),
                          QuarterCellsRule(g)));
  CommunicationRule rho;
  rho.messages = {{"alpha", "beta"}, {"alpha", "beta"}};
  rho.dist[{{0, 0}, {0, 0}}] = {{{0, 0}, MakeRational(1, 2)}, {{1, 1}, MakeRational(1, 2)}};
  rho.dist[{{0, 0}, {1, 1}}] = {{{0, 1}, MakeRational(1, 2)}, {{1, 0}, MakeRational(1, 2)}};
  REQUIRE(IsBeliefInvariant(g, rho));
  ConjunctionResult conj = Conjunction(g, rho);
  PureProfile obey = {{0, 1}, {0, 1}};
  CHECK(IsPureBne(conj.game, obey));
  DistributionalRule lifted = RuleFromPure(conj.game, obey);
  CHECK(OutcomeEquivalent(lifted, conj.projection, StateMapByName(conj.game, g),
                          QuarterCellsRule(g)));
  PureProfile ignore = {{0, 0}, {0, 0}};
  CHECK_FALSE(OutcomeEquivalent(RuleFromPure(conj.game, ignore), conj.projection,
                                StateMapByName(conj.game, g), QuarterCellsRule(g)));
}

TEST_CASE("lift and push round trip through random devices") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    Game g = RandomSmallGame(rng);
    CommunicationRule rho = RandomBeliefInvariantDevice(rng, g);
    REQUIRE(IsBeliefInvariant(g, rho));
    ConjunctionResult conj = Conjunction(g, rho);
    DistributionalRule base = FindBibce(g);
    DistributionalRule up = LiftRule(g, base, conj.game, conj.projection);
    CHECK(CheckBibce(conj.game, up).empty());
    DistributionalRule top = FindBibce(conj.game);
    DistributionalRule down =
        Pushforward(top, conj.projection, StateMapByName(conj.game, g));
    CHECK(CheckBibce(g, down).empty());
  }
}

}  // namespace
}  // namespace bibce
