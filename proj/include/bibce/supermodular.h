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

#ifndef BIBCE_SUPERMODULAR_H_
#define BIBCE_SUPERMODULAR_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibce/equilibria.h"
#include "bibce/game.h"
#include "bibce/potentials.h"

namespace bibce {

// Actions are ordered by their declared index.
struct SupermodularityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Increasing differences of u_i in (a_i, a_{-i}) at every own state in
// Theta*_i.
SupermodularityReport IsSupermodular(const Game& game);

struct LatticeMeasure {
  std::vector<int> radix;  // |A_i| per player
  std::map<Profile, Rational> mass;
};

using LatticeFunction = std::function<Rational(const Profile&)>;

bool IsSupermodularFunction(const std::vector<int>& radix,
                            const LatticeFunction& f);

struct Rearrangement {
  LatticeMeasure measure;
  int steps = 0;
  std::vector<Rational> objective;  // sum mu f before each step and at the end
};

// Join/meet transfers on the lexicographically first incomparable pair until
// the support is a chain. Throws past |A|^3 steps or when f is not
// supermodular.
Rearrangement OrderRearrange(const LatticeMeasure& mu, const LatticeFunction& f);

bool IsChain(const LatticeMeasure& mu);

// Per type, the largest and smallest action in the support of sigma_i(.|t_i).
// Types without mass get the top or bottom action respectively.
std::pair<PureProfile, PureProfile> ExtremalSelections(
    const Game& game, const DistributionalRule& rule);

// Binary actions. Throws "zero denominator" when v(1) - v(1_S) <= 0 for some
// S != I at some support state.
Rational Kappa(const Game& game, const PotentialFunction& v);

struct CommonBeliefResult {
  std::vector<std::vector<int>> cb;  // CB_i(E), type indices
  Game fictitious;
  PureProfile largest;  // largest BNE of the fictitious game
  Rational epsilon;     // 1 - pi(E)
  Rational cb_mass;     // pi(CB(E))
  std::optional<Rational> bound;  // 1 - kappa * epsilon, with v supplied
  bool bound_holds = true;
};

// Types outside E_i get a dominant action 0 through a payoff bonus on fresh
// copies of their states.
CommonBeliefResult CommonBeliefEvent(
    const Game& game, const std::vector<std::vector<int>>& event,
    const std::optional<PotentialFunction>& v = {});

}  // namespace bibce

#endif  // BIBCE_SUPERMODULAR_H_
