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

#ifndef BIBCE_TESTS_TEST_GAMES_H_
#define BIBCE_TESTS_TEST_GAMES_H_

#include <random>
#include <string>
#include <vector>

#include "bibce/game.h"

namespace bibce::testing {

inline int Draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<std::string> Names(const std::string& stem, int count) {
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) out.push_back(stem + std::to_string(k));
  return out;
}

// Random prior weights in 0..3 over all cells (at least one positive),
// payoffs in -3..3. Not necessarily minimal.
inline Game RandomGame(std::mt19937_64& rng, int players, std::vector<int> actions,
                       std::vector<int> types, std::vector<int> states) {
  std::vector<std::vector<std::string>> a(players), t(players), s(players);
  for (int i = 0; i < players; ++i) {
    a[i] = Names("a", actions[i]);
    t[i] = Names("t", types[i]);
    s[i] = Names("s", states[i]);
  }
  Game g(Names("p", players), a, t, s);
  for (int i = 0; i < players; ++i) {
    for (ActionIndex x = 0; x < g.NumActionProfiles(); ++x) {
      for (int k = 0; k < states[i]; ++k) g.SetPayoff(i, x, k, Draw(rng, -3, 3));
    }
  }
  std::vector<Cell> cells;
  Profile tt(players, 0), ss(players, 0);
  // Enumerate type and state profiles as one mixed-radix counter.
  while (true) {
    cells.push_back({tt, ss});
    int k = 0;
    for (; k < 2 * players; ++k) {
      Profile& v = k < players ? tt : ss;
      int idx = k % players;
      int radix = k < players ? types[idx] : states[idx];
      if (++v[idx] < radix) break;
      v[idx] = 0;
    }
    if (k == 2 * players) break;
  }
  std::vector<int> weight(cells.size());
  int total = 0;
  for (auto& w : weight) total += (w = Draw(rng, 0, 3));
  if (total == 0) {
    weight[0] = 1;
    total = 1;
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (weight[c] > 0) g.AddPrior(cells[c], MakeRational(weight[c], total));
  }
  return g;
}

inline Game RandomSmallGame(std::mt19937_64& rng) {
  int players = Draw(rng, 1, 2);
  std::vector<int> actions, types, states;
  for (int i = 0; i < players; ++i) {
    actions.push_back(Draw(rng, 1, 3));
    types.push_back(Draw(rng, 1, 2));
    states.push_back(Draw(rng, 1, 2));
  }
  return MinimumRepresentation(RandomGame(rng, players, actions, types, states));
}

// Two messages per player: a product of type-measurable marginals plus a
// cell-dependent rectangle move that keeps every marginal.
inline CommunicationRule RandomBeliefInvariantDevice(std::mt19937_64& rng,
                                                     const Game& g) {
  const int n = g.NumPlayers();
  CommunicationRule rho;
  rho.messages.assign(n, {"m0", "m1"});
  std::vector<std::vector<Rational>> q(n);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < g.NumTypes(i); ++t) q[i].push_back(MakeRational(Draw(rng, 0, 4), 4));
  }
  const std::size_t count = std::size_t{1} << n;
  for (const auto& [cell, mass] : g.Prior()) {
    std::vector<Rational> joint(count);
    for (std::size_t m = 0; m < count; ++m) {
      Rational x = 1;
      for (int i = 0; i < n; ++i) {
        const Rational& one = q[i][cell.types[i]];
        x *= (m >> i) & 1u ? one : Rational(1 - one);
      }
      joint[m] = x;
    }
    if (n == 2) {
      int k = Draw(rng, -2, 2);
      Rational delta = k >= 0 ? MakeRational(k, 2) * std::min(joint[1], joint[2])
                              : MakeRational(k, 2) * std::min(joint[0], joint[3]);
      joint[0] += delta;
      joint[3] += delta;
      joint[1] -= delta;
      joint[2] -= delta;
    }
    for (std::size_t m = 0; m < count; ++m) {
      if (joint[m] == 0) continue;
      Profile msg(n);
      for (int i = 0; i < n; ++i) msg[i] = (m >> i) & 1u;
      rho.dist[cell][msg] = joint[m];
    }
  }
  return rho;
}

// Binary actions with increasing differences at every own state, by
// rejection on each player's payoff table.
inline Game RandomBinarySupermodular(std::mt19937_64& rng, int players, int types,
                                     int states) {
  std::vector<int> two(players, 2), ts(players, types), ss(players, states);
  Game g = RandomGame(rng, players, two, ts, ss);
  for (int i = 0; i < players; ++i) {
    for (int s = 0; s < states; ++s) {
      while (true) {
        for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
          g.SetPayoff(i, a, s, Draw(rng, -3, 3));
        }
        bool ok = true;
        for (ActionIndex a = 0; a < g.NumActionProfiles() && ok; ++a) {
          if (g.ActionOf(a, i) != 0) continue;
          Rational d = g.Payoff(i, g.WithAction(a, i, 1), s) - g.Payoff(i, a, s);
          for (int j = 0; j < players && ok; ++j) {
            if (j == i || g.ActionOf(a, j) != 0) continue;
            ActionIndex b = g.WithAction(a, j, 1);
            Rational e = g.Payoff(i, g.WithAction(b, i, 1), s) - g.Payoff(i, b, s);
            ok = e >= d;
          }
        }
        if (ok) break;
      }
    }
  }
  return MinimumRepresentation(g);
}

}  // namespace bibce::testing

#endif  // BIBCE_TESTS_TEST_GAMES_H_
