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

#ifndef BIBCE_POTENTIALS_H_
#define BIBCE_POTENTIALS_H_

#include <optional>
#include <string>
#include <vector>

#include "bibce/equilibria.h"
#include "bibce/game.h"
#include "bibce/lp.h"

namespace bibce {

// State profiles carrying positive prior mass, in increasing order. This is
// Theta* for the product-state representation.
std::vector<Profile> SupportStates(const Game& game);

// v(a, theta) for theta in Theta*; q is filled by FindPotential only.
struct PotentialFunction {
  std::vector<Profile> states;
  std::vector<std::vector<Rational>> v;               // [state][a]
  std::vector<std::vector<std::vector<Rational>>> q;  // [i][state][a], a_i = 0

  int StateIndex(const Profile& state) const;
  // Off Theta*, each component outside Theta*_i is replaced by the first
  // element of Theta*_i before lookup.
  const Rational& ValueAt(ActionIndex a, const Profile& state) const;
};

// Direct check of u_i(a, theta) - v(a, theta) being independent of a_i.
std::vector<std::string> CheckPotential(const Game& game,
                                        const PotentialFunction& v);

struct PotentialSearch {
  bool feasible = false;
  PotentialFunction potential;
  // When infeasible: the offending state and multipliers y over the rows
  // u_i(a, theta) = v(a) + q_i(a_{-i}) (row order: player-major, then a),
  // with y'A = 0 and y'b != 0.
  Profile state;
  std::vector<Rational> certificate;
};

// Normalized by v(a^0, theta) = 0 for the first action profile a^0.
PotentialSearch FindPotential(const Game& game);

struct RuleMaximum {
  DistributionalRule rule;
  Rational value;
  LinearProgram face;  // belief-invariant rules pinned at the optimum
  RuleBlock block;
};

// Maximizes expected v over belief-invariant rules and asserts obedience.
RuleMaximum MaximizePotentialBibce(const Game& game, const PotentialFunction& v);

// True when every z coordinate is constant on the optimal face.
bool FaceIsSingleton(const LinearProgram& face, const RuleBlock& block);

// Per player, a list of action subsets (sorted action indices).
struct Covering {
  std::vector<std::vector<std::vector<int>>> sets;

  int Size(int i) const { return static_cast<int>(sets[i].size()); }
  std::size_t NumProfiles() const;
  // Mixed-radix index of a subset profile, player 0 most significant.
  std::size_t Encode(const Profile& x) const;
  Profile Decode(std::size_t index) const;
};

std::vector<std::string> ValidateCovering(const Game& game, const Covering& c);

Covering TrivialCovering(const Game& game);
Covering SingletonCovering(const Game& game);
// {{0,1},{1}} per player for binary-action games.
Covering MonotoneCovering(const Game& game);

struct GeneralizedPotential {
  Covering covering;
  std::vector<Profile> states;
  std::vector<std::vector<Rational>> f;  // [state][subset profile]
};

GeneralizedPotential FromPotential(const Game& game, const PotentialFunction& v);

// P_i(a_{-i}, X_{-i}, theta): a is a full profile with a_i = 0, x a full
// subset profile with x_i = the recommended subset.
struct BeliefAtom {
  ActionIndex a;
  Profile x;
  int state;
  Rational p;
};

struct GpVerdict {
  bool certified = true;
  int player = -1;
  int subset = -1;
  int better_action = -1;  // strictly beats every action in the subset
  std::vector<BeliefAtom> belief;
  Rational slack;
};

// For each (i, X_i) and each action a* outside X_i, maximizes the margin by
// which a* beats every action of X_i over beliefs under which X_i is an
// F-argmax. Any positive optimum is a counterexample.
GpVerdict VerifyGeneralizedPotential(const Game& game,
                                     const GeneralizedPotential& f);

// Re-checks a counterexample by direct evaluation.
bool CheckGpCounterexample(const Game& game, const GeneralizedPotential& f,
                           const GpVerdict& verdict);

struct MonotonePotential {
  bool feasible = false;
  PotentialFunction v;
  std::vector<Rational> lambda;
  Rational slack;  // min over a != 1 of v(1) - v(a), after rescaling
};

// Requires binary actions. When `require_supermodular_v`, rows making v
// supermodular are added (the branch for non-supermodular games).
MonotonePotential FindMonotonePotential(const Game& game,
                                        bool require_supermodular_v = false);

// F(X, theta) = v((min X_i)_i, theta) on the monotone covering.
GeneralizedPotential FromMonotonePotential(const Game& game,
                                           const PotentialFunction& v);

// gamma(a, X, t, theta) in joint (times prior) form.
struct ADecisionRule {
  std::map<std::pair<RuleKey, std::size_t>, Rational> mass;
};

struct GpMaximum {
  ADecisionRule gamma;
  DistributionalRule rule;  // sigma(a|t,theta) = gamma({a} x A | t, theta)
  Rational value;
};

GpMaximum GpMaximizingBibce(const Game& game, const GeneralizedPotential& f);

// The F-maximizing obedient face embedded in `lp`: gamma columns with
// prior, belief-invariance, pin and obedience rows.
struct GpFace {
  Rational value;
  std::map<RuleKey, LinearTerm> projection;  // sigma(a, t, theta) in gamma
  std::vector<std::pair<std::pair<RuleKey, std::size_t>, int>> gamma;
};

GpFace AddGpFace(const Game& game, const GeneralizedPotential& f,
                 LinearProgram& lp, const std::string& prefix);

}  // namespace bibce

#endif  // BIBCE_POTENTIALS_H_
