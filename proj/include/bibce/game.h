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

#ifndef BIBCE_GAME_H_
#define BIBCE_GAME_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bibce/rational.h"

namespace bibce {

// One index per player (types, payoff states or actions).
using Profile = std::vector<int>;

// Mixed-radix encoding of an action profile; see Game::Encode.
using ActionIndex = std::size_t;

// Marks a state component that lies outside the base game's state space.
inline constexpr int kOffSupport = -1;

struct Cell {
  Profile types;
  Profile states;

  auto operator<=>(const Cell&) const = default;
};

// A finite incomplete-information game over product payoff states. Player
// i's payoff depends on the realized state profile only through its own
// component, which the payoff table keys on directly.
class Game {
 public:
  Game() = default;
  Game(std::vector<std::string> players,
       std::vector<std::vector<std::string>> actions,
       std::vector<std::vector<std::string>> types,
       std::vector<std::vector<std::string>> payoff_states);

  int NumPlayers() const { return static_cast<int>(players_.size()); }
  const std::vector<std::string>& Players() const { return players_; }
  const std::vector<std::string>& Actions(int i) const { return actions_[i]; }
  const std::vector<std::string>& Types(int i) const { return types_[i]; }
  const std::vector<std::string>& States(int i) const { return states_[i]; }
  int NumActions(int i) const { return static_cast<int>(actions_[i].size()); }
  int NumTypes(int i) const { return static_cast<int>(types_[i].size()); }
  int NumStates(int i) const { return static_cast<int>(states_[i].size()); }

  // Returns -1 when the name is unknown.
  int FindAction(int i, const std::string& name) const;
  int FindType(int i, const std::string& name) const;
  int FindState(int i, const std::string& name) const;

  // Prior entries accumulate; zero masses are not stored.
  void AddPrior(const Cell& cell, const Rational& mass);
  const std::map<Cell, Rational>& Prior() const { return prior_; }
  Rational PriorOf(const Cell& cell) const;
  Rational TypeMarginal(int i, int type) const;
  Rational StateMarginal(int i, int state) const;

  void SetPayoff(int i, ActionIndex a, int own_state, const Rational& value);
  const Rational& Payoff(int i, ActionIndex a, int own_state) const {
    return payoffs_[i][a * states_[i].size() + own_state];
  }

  std::size_t NumActionProfiles() const { return num_profiles_; }
  ActionIndex Encode(const Profile& actions) const;
  Profile Decode(ActionIndex a) const;
  int ActionOf(ActionIndex a, int player) const {
    return static_cast<int>((a / stride_[player]) % actions_[player].size());
  }
  // The profile `a` with player's action replaced.
  ActionIndex WithAction(ActionIndex a, int player, int action) const {
    return a - static_cast<ActionIndex>(ActionOf(a, player)) * stride_[player] +
           static_cast<ActionIndex>(action) * stride_[player];
  }
  std::string ProfileName(ActionIndex a) const;

  bool operator==(const Game& other) const;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> actions_;
  std::vector<std::vector<std::string>> types_;
  std::vector<std::vector<std::string>> states_;
  std::map<Cell, Rational> prior_;
  std::vector<std::vector<Rational>> payoffs_;
  std::vector<std::size_t> stride_;
  std::size_t num_profiles_ = 0;
};

struct SupportSets {
  std::vector<std::set<int>> types;   // T*_i
  std::vector<std::set<int>> states;  // Theta*_i
};

SupportSets ComputeSupport(const Game& game);

struct ValidationReport {
  std::vector<std::string> violations;
  SupportSets support;

  bool ok() const { return violations.empty(); }
};

ValidationReport ValidateGame(const Game& game);

// Restriction to T* x Theta*. Idempotent.
Game MinimumRepresentation(const Game& game);

// Per player, old type index -> class index.
struct TypeQuotientMap {
  std::vector<std::vector<int>> classes;
};

struct QuotientResult {
  Game game;
  TypeQuotientMap map;
};

// Coarsest partition of each player's types into classes with identical
// belief hierarchies, found by iterated refinement on beliefs over
// (state, opponent classes). Expects a minimal game.
QuotientResult NonRedundantRepresentation(const Game& game);

// Opaque atoms; missing atoms read as zero mass.
using Atom = std::vector<int>;
using FiniteMeasure = std::map<Atom, Rational>;

// sup over events E of |mu(E) - nu(E)|, i.e. the larger of the positive and
// negative parts of mu - nu. Sub-probability inputs are allowed.
Rational SupEventDistance(const FiniteMeasure& mu, const FiniteMeasure& nu);

struct RuleKey {
  Cell cell;
  ActionIndex action;

  auto operator<=>(const RuleKey&) const = default;
};

// Joint mass z(a, t, theta) = sigma(a | t, theta) pi(t, theta).
struct DistributionalRule {
  std::map<RuleKey, Rational> mass;

  bool operator==(const DistributionalRule&) const = default;
};

FiniteMeasure ToMeasure(const DistributionalRule& rule);

// Checks z >= 0 and per-cell sums against the prior.
std::vector<std::string> CheckRuleConsistency(const Game& game,
                                              const DistributionalRule& rule);

// Per player, perturbed type index -> base type index (-1 if unmapped).
struct TypeMap {
  std::vector<std::vector<int>> map;
};

// Per player, perturbed own-state index -> base own-state index, or
// kOffSupport.
struct StateMap {
  std::vector<std::vector<int>> map;
};

TypeMap IdentityTypeMap(const Game& game);
// Matches state names; unmatched states map to kOffSupport.
StateMap StateMapByName(const Game& perturbed, const Game& base);

// Base cell for a perturbed cell. A state profile with any off-support
// component collapses entirely to the off-support bucket.
Cell MapCell(const Cell& cell, const TypeMap& tau, const StateMap& phi);

// z'(a, t, theta) = sum over tau^{-1}(t) of z(a, tbar, theta).
DistributionalRule Pushforward(const DistributionalRule& rule,
                               const TypeMap& tau, const StateMap& phi);

// Pushforward of the prior as a measure over base cells.
std::map<Cell, Rational> PushforwardPrior(const Game& perturbed,
                                          const TypeMap& tau,
                                          const StateMap& phi);

// rho(m | t, theta) for each support cell.
struct CommunicationRule {
  std::vector<std::vector<std::string>> messages;
  std::map<Cell, std::map<Profile, Rational>> dist;
};

bool IsBeliefInvariant(const Game& game, const CommunicationRule& rho);

struct ConjunctionResult {
  Game game;
  TypeMap projection;
};

// Types become (t_i, m_i) pairs named "t|m"; prior pi(t, theta) rho(m|t, theta).
ConjunctionResult Conjunction(const Game& game, const CommunicationRule& rho);

// Rule sigma(a|t,theta) lifted to a rule of `elaborated` whose conditional
// action distribution at tbar equals sigma's at tau(tbar).
DistributionalRule LiftRule(const Game& base, const DistributionalRule& rule,
                            const Game& elaborated, const TypeMap& tau);

}  // namespace bibce

#endif  // BIBCE_GAME_H_
