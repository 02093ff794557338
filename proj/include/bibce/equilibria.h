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

#ifndef BIBCE_EQUILIBRIA_H_
#define BIBCE_EQUILIBRIA_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibce/game.h"
#include "bibce/lp.h"

namespace bibce {

// z(a, t, theta) variables of one game inside a (possibly shared) program.
struct RuleBlock {
  std::vector<RuleKey> keys;
  std::vector<int> index;  // LP column of keys[k]
  std::map<RuleKey, int> lookup;
  // w_i(a_i, t_i) columns, only when belief invariance was imposed.
  std::map<std::pair<int, std::pair<int, int>>, int> marginal;
};

struct RuleOptions {
  bool belief_invariant = true;
  bool obedient = true;
};

// Adds rule variables with prior rows, and optionally belief-invariance and
// obedience rows. Obedience rows exist for t_i in T*_i only.
RuleBlock AddRuleBlock(const Game& game, LinearProgram& lp,
                       const RuleOptions& options, const std::string& prefix);

DistributionalRule ExtractRule(const RuleBlock& block,
                               const std::vector<Rational>& x);

enum class PolytopeKind { kBce, kBibce };

struct EquilibriumPolytope {
  PolytopeKind kind;
  LinearProgram lp;
  RuleBlock block;
};

EquilibriumPolytope BceConstraints(const Game& game);
EquilibriumPolytope BibceConstraints(const Game& game);

// Any BIBCE; throws TheoryViolation if the polytope is empty.
DistributionalRule FindBibce(const Game& game);
DistributionalRule FindBce(const Game& game);

// Direct exact checks on a rule; each returns the list of violations.
std::vector<std::string> CheckObedience(const Game& game,
                                        const DistributionalRule& rule);
std::vector<std::string> CheckBeliefInvariance(const Game& game,
                                               const DistributionalRule& rule);
// Consistency, belief invariance and obedience together.
std::vector<std::string> CheckBibce(const Game& game,
                                    const DistributionalRule& rule);
std::vector<std::string> CheckBce(const Game& game,
                                  const DistributionalRule& rule);

// sigma_i(a_i | t_i) indexed [i][t][a].
struct StrategyProfile {
  std::vector<std::vector<std::vector<Rational>>> prob;
};

// A pure profile: action index per [i][t].
using PureProfile = std::vector<std::vector<int>>;

StrategyProfile FromPure(const Game& game, const PureProfile& pure);
DistributionalRule RuleFromProfile(const Game& game,
                                   const StrategyProfile& profile);
DistributionalRule RuleFromPure(const Game& game, const PureProfile& pure);

// Interim expected payoff (unnormalized by pi(t_i)) of type t_i playing
// `action` while opponents follow `pure`.
Rational InterimPayoff(const Game& game, const PureProfile& pure, int player,
                       int type, int action);

bool IsPureBne(const Game& game, const PureProfile& pure);

// Exhaustive; refused beyond 2 players x 3 actions x 3 types.
std::vector<PureProfile> EnumeratePureBne(const Game& game);

// Surviving action indices per [i][t]. Types outside T*_i keep everything.
using SurvivorSets = std::vector<std::vector<std::vector<int>>>;

// Interim iterated elimination of strictly dominated actions (mixed
// dominators, against every type-measurable pure opponent selection into
// the current survivors). With a seed, actions are removed one at a time in
// a random order instead of in simultaneous rounds.
SurvivorSets IteratedStrictDominance(const Game& game,
                                     std::optional<std::uint64_t> seed = {});

enum class Extreme { kTop, kBottom };

// Largest or smallest pure BNE of a supermodular game (action order is the
// declared index order) by monotone best-response iteration.
PureProfile ExtremalBneSupermodular(const Game& game, Extreme from);

bool OutcomeEquivalent(const DistributionalRule& rule_a, const TypeMap& tau,
                       const StateMap& phi, const DistributionalRule& rule_b);

}  // namespace bibce

#endif  // BIBCE_EQUILIBRIA_H_
