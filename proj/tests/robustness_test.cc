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

#include <filesystem>

#include "bibce/io.h"
#include "bibce/robustness.h"

namespace bibce {
namespace {

GeneralizedPotential MotivatingF() {
  Game g = MotivatingExample();
  return FromPotential(g, FindPotential(g).potential);
}

TEST_CASE("zero-elaborations reach the maximizer exactly") {
  GeneralizedPotential f = MotivatingF();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    ElaborationWitness w = RandomEpsilonElaboration(MotivatingExample(), 0, seed);
    CHECK(w.epsilon == 0);
    DistanceResult d = MinDistanceToSet(w, f);
    CHECK(d.distance == 0);
    CHECK(d.target_rule == QuarterCellsRule(w.base));
    CHECK(d.value_gap == 0);
  }
}

TEST_CASE("trivial covering: distance is at most epsilon") {
  Game base = MotivatingExample();
  GeneralizedPotential f;
  f.covering = TrivialCovering(base);
  f.states = SupportStates(base);
  f.f.assign(f.states.size(), std::vector<Rational>(1, 0));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    ElaborationWitness w = RandomEpsilonElaboration(base, MakeRational(1, 10), seed);
    DistanceResult d = MinDistanceToSet(w, f);
    CHECK(d.distance <= w.epsilon);
  }
}

TEST_CASE("email witness: frozen distances at depth 6") {
  GeneralizedPotential f = MotivatingF();
  DistanceResult quarter = MinDistanceToSet(EmailGameFamily(MakeRational(1, 4), 6), f);
  DistanceResult tenth = MinDistanceToSet(EmailGameFamily(MakeRational(1, 10), 6), f);
  CHECK(quarter.distance == ParseRational("4773/16384"));
  CHECK(tenth.distance == ParseRational("527637/4000000"));
  CHECK(tenth.distance < quarter.distance);
}

TEST_CASE("F value of a rule matches direct summation") {
  Game g = MotivatingExample();
  PotentialFunction v = FindPotential(g).potential;
  GeneralizedPotential f = FromPotential(g, v);
  DistributionalRule t = QuarterCellsRule(g);
  Rational direct = 0;
  for (const auto& [key, mass] : t.mass) direct += mass * v.ValueAt(key.action, key.cell.states);
  CHECK(RuleFValue(g, f, t) == direct);
  DistributionalRule off = t;
  off.mass[{{{0, 0}, {kOffSupport, kOffSupport}}, 0}] = 1;
  CHECK(RuleFValue(g, f, off) == direct);
}

TEST_CASE("closed-form email pushforward") {
  Game g = MotivatingExample();
  Rational last = 1;
  for (int den : {4, 10, 40, 160, 640}) {
    DistributionalRule rule = EmailLimitPushforward(g, MakeRational(1, den));
    Rational total = 0;
    for (const auto& [key, mass] : rule.mass) total += mass;
    CHECK(total == 1);
    Rational d = SupEventDistance(ToMeasure(rule), ToMeasure(QuarterCellsRule(g)));
    CHECK(d < last);
    last = d;
  }
  CHECK(last < MakeRational(1, 100));
}

TEST_CASE("sweep: zero column and determinism") {
  GeneralizedPotential f = MotivatingF();
  Family family = [](const Rational& eps) {
    return RandomEpsilonElaboration(MotivatingExample(), eps, 9);
  };
  SweepReport zero = RobustnessSweep(f, "random", family, {Rational(0), Rational(0)});
  for (const SweepRow& row : zero.rows) CHECK(row.distance == 0);

  std::vector<Rational> eps = {MakeRational(1, 4), MakeRational(1, 20)};
  SweepReport a = RobustnessSweep(f, "random", family, eps);
  SweepReport b = RobustnessSweep(f, "random", family, eps);
  REQUIRE(a.rows.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a.rows[k].epsilon == eps[k]);
    CHECK(a.rows[k].distance == b.rows[k].distance);
    CHECK(a.rows[k].value_gap == b.rows[k].value_gap);
    CHECK(a.rows[k].certified == b.rows[k].certified);
  }
  CHECK(a.game_hash == HashGame(MotivatingExample()));
  std::string csv = SweepCsv(a);
  CHECK(csv.rfind("family,epsilon_num,epsilon_den,distance_num,distance_den,value_gap,ms\n", 0) == 0);
  CHECK(csv.find("random,1,4,") != std::string::npos);
}

TEST_CASE("sweep rows re-derive from serialized witnesses") {
  GeneralizedPotential f = MotivatingF();
  const auto dir = std::filesystem::temp_directory_path() / "bibce_witness_test";
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    ElaborationWitness w = RandomEpsilonElaboration(MotivatingExample(), MakeRational(1, 8), seed);
    DistanceResult direct = MinDistanceToSet(w, f);
    WriteWitness(dir.string(), w);
    ElaborationWitness r;
    r.base = GameFromDocument(LoadDocument((dir / "base.json").string())).game;
    r.perturbed = GameFromDocument(LoadDocument((dir / "perturbed.json").string())).game;
    r.tau = TypeMapFromDocument(r.perturbed, r.base, LoadDocument((dir / "tau.json").string()));
    r.phi = StateMapFromDocument(r.perturbed, r.base, LoadDocument((dir / "phi.json").string()));
    Json cert = LoadDocument((dir / "certificate.json").string()).value;
    CHECK(ParseRational(cert["epsilon"].get<std::string>()) == w.epsilon);
    CHECK(MinDistanceToSet(r, f).distance == direct.distance);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("reproduction reports pass their checks") {
  Report m = ReproduceMotivatingExample();
  for (const auto& line : m.lines) INFO(line);
  CHECK(m.ok);
  Report g = ReproduceGlobalGameExample(MakeRational(9, 10), MakeRational(1, 10), 60);
  CHECK(g.ok);
  CHECK(g.lines.front() == "tau* = 7");
  CHECK_THROWS_WITH(ReproduceGlobalGameExample(MakeRational(1, 2), MakeRational(5, 7), 10),
                    doctest::Contains("knife-edge"));
}

}  // namespace
}  // namespace bibce
