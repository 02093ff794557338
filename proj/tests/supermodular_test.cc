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
#include "bibce/supermodular.h"
#include "test_games.h"

namespace bibce {
namespace {

using testing::Draw;

Rational Product(const Profile& a) {
  Rational x = 1;
  for (int v : a) x *= v;
  return x;
}

TEST_CASE("supermodularity checks") {
  for (int depth : {1, 5, 30}) {
    GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), depth);
    CHECK(IsSupermodular(gg.game).ok);
  }
  Game pennies({"1", "2"}, {{"h", "t"}, {"h", "t"}}, {{"x"}, {"x"}}, {{"s"}, {"s"}});
  pennies.AddPrior({{0, 0}, {0, 0}}, 1);
  for (ActionIndex a = 0; a < 4; ++a) {
    int match = pennies.ActionOf(a, 0) == pennies.ActionOf(a, 1) ? 1 : -1;
    pennies.SetPayoff(0, a, 0, match);
    pennies.SetPayoff(1, a, 0, -match);
  }
  SupermodularityReport report = IsSupermodular(pennies);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.violations.empty());

  Game single({"1", "2"}, {{"a"}, {"b"}}, {{"x"}, {"x"}}, {{"s"}, {"s"}});
  single.AddPrior({{0, 0}, {0, 0}}, 1);
  CHECK(IsSupermodular(single).ok);
}

TEST_CASE("single transfer moves mass to join and meet") {
  LatticeMeasure mu{{2, 2}, {{{1, 0}, MakeRational(1, 2)}, {{0, 1}, MakeRational(1, 2)}}};
  Rearrangement out = OrderRearrange(mu, Product);
  CHECK(out.steps == 1);
  CHECK(out.measure.mass == std::map<Profile, Rational>{{{0, 0}, MakeRational(1, 2)},
                                                        {{1, 1}, MakeRational(1, 2)}});
}

TEST_CASE("chain support is left alone") {
  LatticeMeasure mu{{3, 3}, {{{0, 0}, MakeRational(1, 3)}, {{1, 2}, MakeRational(2, 3)}}};
  Rearrangement out = OrderRearrange(mu, Product);
  CHECK(out.steps == 0);
  CHECK(out.measure.mass == mu.mass);
}

TEST_CASE("uniform square: objective rises from 1/4 to 1/2") {
  LatticeMeasure mu{{2, 2}, {}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) mu.mass[{a, b}] = MakeRational(1, 4);
  }
  Rearrangement out = OrderRearrange(mu, Product);
  CHECK(out.objective.front() == MakeRational(1, 4));
  CHECK(out.objective.back() == MakeRational(1, 2));
  CHECK(IsChain(out.measure));
}

TEST_CASE("rearrangement refuses non-supermodular objectives") {
  LatticeMeasure mu{{2, 2}, {{{1, 0}, 1}}};
  CHECK_THROWS_AS(OrderRearrange(mu, [](const Profile& a) { return Rational(-Product(a)); }),
                  BibceError);
}

std::map<std::pair<int, int>, Rational> Marginals(const LatticeMeasure& mu) {
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [a, m] : mu.mass) {
    for (std::size_t i = 0; i < a.size(); ++i) out[{static_cast<int>(i), a[i]}] += m;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

TEST_CASE("random rearrangements keep marginals and reach a chain") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    int n = Draw(rng, 1, 3);
    std::vector<int> radix(n);
    for (int& r : radix) r = Draw(rng, 1, 3);
    // Sum of pairwise products of increasing functions plus a separable part.
    std::vector<std::vector<int>> g(n);
    for (auto& row : g) {
      int x = 0;
      for (int k = 0; k < 3; ++k) row.push_back(x += Draw(rng, 0, 2));
    }
    std::vector<std::vector<int>> h(n, std::vector<int>(3));
    for (auto& row : h) for (int& x : row) x = Draw(rng, -3, 3);
    LatticeFunction f = [=](const Profile& a) {
      Rational total = 0;
      for (int i = 0; i < n; ++i) {
        total += h[i][a[i]];
        for (int j = i + 1; j < n; ++j) total += g[i][a[i]] * g[j][a[j]];
      }
      return total;
    };
    LatticeMeasure mu{radix, {}};
    int weights = 0;
    std::map<Profile, int> raw;
    for (int k = 0; k < 5; ++k) {
      Profile p(n);
      for (int i = 0; i < n; ++i) p[i] = Draw(rng, 0, radix[i] - 1);
      int w = Draw(rng, 1, 4);
      raw[p] += w;
      weights += w;
    }
    for (const auto& [p, w] : raw) mu.mass[p] = MakeRational(w, weights);
    Rearrangement out = OrderRearrange(mu, f);
    CHECK(Marginals(out.measure) == Marginals(mu));
    CHECK(IsChain(out.measure));
    for (std::size_t k = 1; k < out.objective.size(); ++k) {
      CHECK(out.objective[k] >= out.objective[k - 1]);
    }
  }
}

TEST_CASE("extremal selections") {
  Game g = MotivatingExample();
  PureProfile pure = {{1}, {0}};
  auto [top, bottom] = ExtremalSelections(g, RuleFromPure(g, pure));
  CHECK(top == pure);
  CHECK(bottom == pure);
  auto [qtop, qbottom] = ExtremalSelections(g, QuarterCellsRule(g));
  CHECK(qtop == PureProfile{{1}, {1}});
  CHECK(qbottom == PureProfile{{0}, {0}});
}

TEST_CASE("global game: potential maximum selects the threshold profile") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), 60);
  RuleMaximum best = MaximizePotentialBibce(gg.game, gg.potential);
  auto [top, bottom] = ExtremalSelections(gg.game, best.rule);
  TypeActions star = ThresholdProfile(gg, TauStar(gg.r, gg.p));
  CHECK(FromPureProfile(gg, top) == star);
  CHECK(FromPureProfile(gg, bottom) == star);
  CHECK(best.value == GlobalGameF(gg, star));
}

// Supermodular v on a 2-player lattice, u_i = v + q_i, common states on
// the diagonal.
Game RandomSupermodularPotentialGame(std::mt19937_64& rng, PotentialFunction& v) {
  int a0 = Draw(rng, 2, 3), a1 = Draw(rng, 2, 3), types = Draw(rng, 1, 2);
  int states = Draw(rng, 1, 2);
  Game g({"1", "2"}, {testing::Names("a", a0), testing::Names("a", a1)},
         {testing::Names("t", types), testing::Names("t", types)},
         {testing::Names("s", states), testing::Names("s", states)});
  int total = 0;
  std::map<Cell, int> w;
  for (int t0 = 0; t0 < types; ++t0) {
    for (int t1 = 0; t1 < types; ++t1) {
      for (int s = 0; s < states; ++s) total += (w[{{t0, t1}, {s, s}}] = Draw(rng, 1, 3));
    }
  }
  for (const auto& [cell, x] : w) g.AddPrior(cell, MakeRational(x, total));
  v.states = SupportStates(g);
  v.v.clear();
  for (int s = 0; s < states; ++s) {
    std::vector<Rational> row(g.NumActionProfiles());
    // v = x*y*c + separable terms, c >= 0.
    int c = Draw(rng, 0, 2);
    std::vector<int> f0(a0), f1(a1);
    for (int& x : f0) x = Draw(rng, -2, 2);
    for (int& x : f1) x = Draw(rng, -2, 2);
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
      int x = g.ActionOf(a, 0), y = g.ActionOf(a, 1);
      row[a] = c * x * y + f0[x] + f1[y];
    }
    for (int i = 0; i < 2; ++i) {
      std::map<ActionIndex, int> q;
      for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
        ActionIndex key = g.WithAction(a, i, 0);
        if (!q.count(key)) q[key] = Draw(rng, -2, 2);
        g.SetPayoff(i, a, s, row[a] + q[key]);
      }
    }
    v.v.push_back(row);
  }
  return g;
}

TEST_CASE("extremal selections of potential maxima are potential-maximizing BNE") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    PotentialFunction v;
    Game g = RandomSupermodularPotentialGame(rng, v);
    REQUIRE(IsSupermodular(g).ok);
    REQUIRE(CheckPotential(g, v).empty());
    RuleMaximum best = MaximizePotentialBibce(g, v);
    auto [top, bottom] = ExtremalSelections(g, best.rule);
    for (const PureProfile& sel : {top, bottom}) {
      DistributionalRule rule = RuleFromPure(g, sel);
      CHECK(CheckBibce(g, rule).empty());
      Rational value = 0;
      for (const auto& [key, mass] : rule.mass) {
        value += mass * v.ValueAt(key.action, key.cell.states);
      }
      CHECK(value == best.value);
    }
  }
}

Game TwoByTwo() {
  Game g({"1", "2"}, {{"0", "1"}, {"0", "1"}}, {{"t"}, {"t"}}, {{"s"}, {"s"}});
  g.AddPrior({{0, 0}, {0, 0}}, 1);
  return g;
}

PotentialFunction Table(const Game& g, Rational v11, Rational v10, Rational v01,
                        Rational v00) {
  PotentialFunction v;
  v.states = SupportStates(g);
  std::vector<Rational> row(4);
  row[g.Encode({1, 1})] = v11;
  row[g.Encode({1, 0})] = v10;
  row[g.Encode({0, 1})] = v01;
  row[g.Encode({0, 0})] = v00;
  v.v.push_back(row);
  return v;
}

TEST_CASE("kappa examples") {
  Game g = TwoByTwo();
  CHECK(Kappa(g, Table(g, 1, 0, 0, MakeRational(1, 2))) == 2);
  CHECK(Kappa(g, Table(g, 3, 1, 1, 1)) == 1);
  CHECK_THROWS_AS(Kappa(g, Table(g, 1, 1, 0, 0)), BibceError);
  // Adding a constant changes nothing.
  CHECK(Kappa(g, Table(g, 8, 7, 7, MakeRational(15, 2))) == 2);
}

TEST_CASE("kappa is at least one") {
  std::mt19937_64 rng(2);
  Game g = TwoByTwo();
  for (int trial = 0; trial < 50; ++trial) {
    Rational top = 10;
    PotentialFunction v = Table(g, top, Draw(rng, -5, 9), Draw(rng, -5, 9), Draw(rng, -5, 9));
    Rational k = Kappa(g, v);
    CHECK(k >= 1);
    for (auto& x : v.v[0]) x += 3;
    CHECK(Kappa(g, v) == k);
  }
}

std::vector<std::vector<int>> Cutoff(const GlobalGame& gg, int cutoff) {
  std::vector<std::vector<int>> e(2);
  for (int k = 0; k < cutoff && k <= gg.depth + 1; ++k) e[k % 2].push_back(k / 2);
  return e;
}

TEST_CASE("common belief: full event") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), 4);
  CommonBeliefResult res = CommonBeliefEvent(gg.game, Cutoff(gg, gg.depth + 2));
  CHECK(res.epsilon == 0);
  CHECK(res.cb_mass == 1);
  CHECK(FromPureProfile(gg, res.largest) == ThresholdProfile(gg, gg.depth + 2));
}

TEST_CASE("common belief: empty event") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 10), 4);
  MonotonePotential mp = FindMonotonePotential(gg.game);
  REQUIRE(mp.feasible);
  CommonBeliefResult res = CommonBeliefEvent(gg.game, {{}, {}}, mp.v);
  CHECK(res.epsilon == 1);
  CHECK(res.cb[0].empty());
  CHECK(res.cb[1].empty());
  CHECK(*res.bound <= 0);
  CHECK(res.bound_holds);
}

TEST_CASE("common belief: cutoff events satisfy the bound and nest") {
  GlobalGame gg = GlobalGameFamily(MakeRational(9, 10), MakeRational(1, 40), 5);
  MonotonePotential mp = FindMonotonePotential(gg.game);
  REQUIRE(mp.feasible);
  std::vector<std::vector<int>> previous(2);
  for (int cutoff = 0; cutoff <= gg.depth + 2; ++cutoff) {
    CommonBeliefResult res = CommonBeliefEvent(gg.game, Cutoff(gg, cutoff), mp.v);
    CHECK(res.bound_holds);
    for (int i = 0; i < 2; ++i) {
      for (int t : res.cb[i]) {
        auto e = Cutoff(gg, cutoff)[i];
        CHECK(std::find(e.begin(), e.end(), t) != e.end());
      }
      for (int t : previous[i]) {
        CHECK(std::find(res.cb[i].begin(), res.cb[i].end(), t) != res.cb[i].end());
      }
    }
    previous = res.cb;
  }
}

}  // namespace
}  // namespace bibce
