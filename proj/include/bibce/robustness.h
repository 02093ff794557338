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

#ifndef BIBCE_ROBUSTNESS_H_
#define BIBCE_ROBUSTNESS_H_

#include <functional>
#include <string>
#include <vector>

#include "bibce/elaborations.h"
#include "bibce/potentials.h"

namespace bibce {

struct DistanceResult {
  Rational distance;
  DistributionalRule perturbed_rule;  // a BIBCE of the perturbed game
  DistributionalRule target_rule;     // a point of the F-maximizing set
  Rational value_gap;
};

// Smallest sup-event distance between the pushforward of a BIBCE of the
// perturbed game and a GP-maximizing BIBCE of the base game, over both sets
// jointly.
DistanceResult MinDistanceToSet(const ElaborationWitness& witness,
                                const GeneralizedPotential& f);

// Expected F(X(a), theta) of a base rule, with X_i(a) the first listed
// subset containing a_i. Off-support mass contributes nothing.
Rational RuleFValue(const Game& game, const GeneralizedPotential& f,
                    const DistributionalRule& rule);

struct SweepRow {
  std::string family;
  Rational epsilon;
  Rational certified;  // epsilon certified for the generated witness
  Rational distance;
  Rational value_gap;
  long long ms = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::string game_hash;
  std::uint64_t seed = 0;
  int depth = 0;
};

using Family = std::function<ElaborationWitness(const Rational& eps)>;

SweepReport RobustnessSweep(const GeneralizedPotential& f, const std::string& name,
                            const Family& family, const std::vector<Rational>& eps_list);

// Columns: family, epsilon_num, epsilon_den, distance_num, distance_den,
// value_gap, ms.
std::string SweepCsv(const SweepReport& report);

struct Report {
  std::vector<std::string> lines;
  bool ok = true;

  void Check(bool condition, const std::string& what);
  void Note(const std::string& line) { lines.push_back(line); }
};

// Pushforward to the base game of the email game's surviving BNE on the
// untruncated chain, in closed form; theta0 mass sits in the off-support
// bucket.
DistributionalRule EmailLimitPushforward(const Game& base, const Rational& eps);

Report ReproduceMotivatingExample();
Report ReproduceGlobalGameExample(const Rational& r, const Rational& p, int depth);

}  // namespace bibce

#endif  // BIBCE_ROBUSTNESS_H_
