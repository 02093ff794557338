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

#ifndef BIBCE_ELABORATIONS_H_
#define BIBCE_ELABORATIONS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bibce/equilibria.h"
#include "bibce/game.h"
#include "bibce/potentials.h"

namespace bibce {

struct EpsilonCertificate {
  Rational epsilon;
  Rational payoff_level;  // 1 - pi(T#)
  Rational prior_distance;
  std::vector<Rational> belief_level;           // per player, best flat choice
  std::vector<std::vector<Rational>> distance;  // [i][type], -1 without mass
  std::vector<std::vector<Rational>> type_mass;
  std::vector<std::vector<int>> flats;          // types with distance <= epsilon
  std::vector<std::vector<int>> sharp;          // T#_i
  Rational sharp_mass;
};

struct ElaborationWitness {
  Game base;
  Game perturbed;
  TypeMap tau;
  StateMap phi;  // used for pushing rules down only
  Rational epsilon;
  std::vector<std::vector<int>> flats;
  Rational sharp_mass;
  Rational tail_mass;  // truncation leak, zero for finite constructions
};

// Exact prior and belief equalities under tau, with states matched by name.
bool VerifyElaboration(const Game& base, const Game& perturbed,
                       const TypeMap& tau);

// Smallest epsilon meeting the payoff-state, prior and belief conditions.
// Perturbed states are matched to base states by name; mass on unmatched
// states is dropped before distances are taken.
EpsilonCertificate EpsilonOf(const Game& base, const Game& perturbed,
                             const TypeMap& tau);

// Checks the three conditions at a given level, flats chosen greedily.
bool SatisfiesEpsilon(const EpsilonCertificate& cert, const Rational& epsilon);

// Two players, actions alpha/beta, one type each, states theta1/theta2
// with probability 1/2.
Game MotivatingExample();

// The motivating game's payoff-state table extended by theta0.
Game MotivatingExampleWithTheta0();

// 1/4 on (alpha,alpha,theta1), (beta,beta,theta1), (alpha,beta,theta2) and
// (beta,alpha,theta2).
DistributionalRule QuarterCellsRule(const Game& base);

// Email-style elaboration with chain n = 0..depth-1. The tail of mass
// (1-eps)^depth goes to a cap cell shared by one extra type per player,
// split evenly between theta1 and theta2.
ElaborationWitness EmailGameFamily(const Rational& eps, int depth);

// Type index of the chain element n for player 0 or 1, by name.
std::string EmailTypeName(int player, int n);

struct GlobalGame {
  Game game;
  Rational r;
  Rational p;
  int depth = 0;
  PotentialFunction potential;
};

// States 0..depth, mass p(1-p)^k below depth and (1-p)^depth at depth.
// Player "1" holds the even types, player "2" the odd ones; state k is
// observed by types k and k+1.
GlobalGame GlobalGameFamily(const Rational& r, const Rational& p, int depth);

// Smallest tau >= 2 with r^tau < (1-p)/(1+r(1-p)); throws at equality.
int TauStar(const Rational& r, const Rational& p);

// Action per type k = 0..depth+1.
using TypeActions = std::vector<int>;

TypeActions ThresholdProfile(const GlobalGame& gg, int tau);
PureProfile ToPure(const GlobalGame& gg, const TypeActions& x);
TypeActions FromPureProfile(const GlobalGame& gg, const PureProfile& pure);
// Expected potential by direct summation over the truncated states.
Rational GlobalGameF(const GlobalGame& gg, const TypeActions& x);

// Types duplicated, a random belief-invariant device on the copies, and eps
// mass moved to a fresh cell of "crazy" types in fresh states where action 0
// is dominant.
ElaborationWitness RandomEpsilonElaboration(const Game& base, const Rational& eps,
                                            std::uint64_t seed);

}  // namespace bibce

#endif  // BIBCE_ELABORATIONS_H_
