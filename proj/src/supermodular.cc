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

#include "bibce/supermodular.h"

#include <algorithm>
#include <set>

namespace bibce {
namespace {

bool Geq(const Profile& a, const Profile& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

Profile Join(const Profile& a, const Profile& b) {
  Profile out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Profile Meet(const Profile& a, const Profile& b) {
  Profile out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

std::vector<Profile> LatticePoints(const std::vector<int>& radix) {
  std::vector<Profile> out;
  Profile p(radix.size(), 0);
  while (true) {
    out.push_back(p);
    std::size_t k = radix.size();
    while (k-- > 0) {
      if (++p[k] < radix[k]) break;
      p[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

Rational Expectation(const LatticeMeasure& mu, const LatticeFunction& f) {
  Rational total = 0;
  for (const auto& [a, m] : mu.mass) total += m * f(a);
  return total;
}

}  // namespace

SupermodularityReport IsSupermodular(const Game& game) {
  SupermodularityReport report;
  SupportSets support = ComputeSupport(game);
  const std::size_t profiles = game.NumActionProfiles();
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::vector<ActionIndex> rest;
    for (ActionIndex a = 0; a < profiles; ++a) {
      if (game.ActionOf(a, i) == 0) rest.push_back(a);
    }
    for (int s : support.states[i]) {
      for (int lo = 0; lo < game.NumActions(i); ++lo) {
        for (int hi = lo + 1; hi < game.NumActions(i); ++hi) {
          for (ActionIndex a : rest) {
            Profile pa = game.Decode(a);
            Rational da = game.Payoff(i, game.WithAction(a, i, hi), s) -
                          game.Payoff(i, game.WithAction(a, i, lo), s);
            for (ActionIndex b : rest) {
              if (b == a || !Geq(game.Decode(b), pa)) continue;
              Rational db = game.Payoff(i, game.WithAction(b, i, hi), s) -
                            game.Payoff(i, game.WithAction(b, i, lo), s);
              if (db < da) {
                report.ok = false;
                report.violations.push_back(
                    "player " + game.Players()[i] + " state " +
                    game.States(i)[s] + ": " + game.Actions(i)[hi] + " vs " +
                    game.Actions(i)[lo] + " gains less at " +
                    game.ProfileName(b) + " than at " + game.ProfileName(a));
              }
            }
          }
        }
      }
    }
  }
  return report;
}

bool IsSupermodularFunction(const std::vector<int>& radix,
                            const LatticeFunction& f) {
  std::vector<Profile> points = LatticePoints(radix);
  for (std::size_t x = 0; x < points.size(); ++x) {
    for (std::size_t y = x + 1; y < points.size(); ++y) {
      const Profile& a = points[x];
      const Profile& b = points[y];
      if (f(Join(a, b)) + f(Meet(a, b)) < f(a) + f(b)) return false;
    }
  }
  return true;
}

bool IsChain(const LatticeMeasure& mu) {
  std::vector<Profile> support;
  for (const auto& [a, m] : mu.mass) {
    if (m > 0) support.push_back(a);
  }
  for (std::size_t x = 0; x < support.size(); ++x) {
    for (std::size_t y = x + 1; y < support.size(); ++y) {
      if (!Geq(support[x], support[y]) && !Geq(support[y], support[x])) return false;
    }
  }
  return true;
}

Rearrangement OrderRearrange(const LatticeMeasure& mu, const LatticeFunction& f) {
  for (const auto& [a, m] : mu.mass) {
    if (m < 0) throw BibceError("negative mass in lattice measure");
    if (a.size() != mu.radix.size()) throw BibceError("profile length mismatch");
  }
  if (!IsSupermodularFunction(mu.radix, f)) {
    throw BibceError("rearrangement refused: f is not supermodular");
  }
  long long size = 1;
  for (int r : mu.radix) size *= r;
  const long long cap = size * size * size;

  Rearrangement out;
  out.measure.radix = mu.radix;
  for (const auto& [a, m] : mu.mass) {
    if (m > 0) out.measure.mass[a] = m;
  }
  while (true) {
    out.objective.push_back(Expectation(out.measure, f));
    // Support in lexicographically descending order.
    std::vector<Profile> support;
    for (auto it = out.measure.mass.rbegin(); it != out.measure.mass.rend(); ++it) {
      support.push_back(it->first);
    }
    int k1 = -1, k2 = -1;
    for (std::size_t x = 0; x < support.size() && k1 < 0; ++x) {
      for (std::size_t y = x + 1; y < support.size(); ++y) {
        if (!Geq(support[x], support[y])) {
          k1 = static_cast<int>(x);
          k2 = static_cast<int>(y);
          break;
        }
      }
    }
    if (k1 < 0) break;
    if (out.steps >= cap) {
      throw BibceError("rearrangement exceeded its iteration cap");
    }
    const Profile a = support[k1];
    const Profile b = support[k2];
    Rational m = std::min(out.measure.mass[a], out.measure.mass[b]);
    auto& mass = out.measure.mass;
    mass[a] -= m;
    mass[b] -= m;
    mass[Join(a, b)] += m;
    mass[Meet(a, b)] += m;
    for (const Profile& p : {a, b}) {
      if (mass[p] == 0) mass.erase(p);
    }
    ++out.steps;
  }
  return out;
}

std::pair<PureProfile, PureProfile> ExtremalSelections(
    const Game& game, const DistributionalRule& rule) {
  const int n = game.NumPlayers();
  PureProfile top(n), bottom(n);
  std::vector<std::vector<bool>> seen(n);
  for (int i = 0; i < n; ++i) {
    top[i].assign(game.NumTypes(i), game.NumActions(i) - 1);
    bottom[i].assign(game.NumTypes(i), 0);
    seen[i].assign(game.NumTypes(i), false);
  }
  for (const auto& [key, mass] : rule.mass) {
    if (mass == 0) continue;
    for (int i = 0; i < n; ++i) {
      const int t = key.cell.types[i];
      const int a = game.ActionOf(key.action, i);
      if (!seen[i][t]) {
        top[i][t] = a;
        bottom[i][t] = a;
        seen[i][t] = true;
      } else {
        top[i][t] = std::max(top[i][t], a);
        bottom[i][t] = std::min(bottom[i][t], a);
      }
    }
  }
  return {top, bottom};
}

Rational Kappa(const Game& game, const PotentialFunction& v) {
  const int n = game.NumPlayers();
  for (int i = 0; i < n; ++i) {
    if (game.NumActions(i) != 2) throw BibceError("kappa needs binary actions");
  }
  const unsigned full = (1u << n) - 1;
  auto indicator = [&](unsigned s) {
    Profile p(n);
    for (int i = 0; i < n; ++i) p[i] = (s >> i) & 1u;
    return game.Encode(p);
  };
  std::optional<Rational> sup, inf;
  for (std::size_t k = 0; k < v.states.size(); ++k) {
    const auto& row = v.v[k];
    for (unsigned s = 0; s < full; ++s) {
      Rational gap = row[indicator(full)] - row[indicator(s)];
      if (!inf || gap < *inf) inf = gap;
      for (unsigned t = s; t < full; t = (t + 1) | s) {
        Rational d = row[indicator(s)] - row[indicator(t)];
        if (!sup || d > *sup) sup = d;
      }
    }
  }
  if (!inf) return 1;
  if (*inf <= 0) throw BibceError("zero denominator");
  return 1 + *sup / *inf;
}

CommonBeliefResult CommonBeliefEvent(const Game& game,
                                     const std::vector<std::vector<int>>& event,
                                     const std::optional<PotentialFunction>& v) {
  const int n = game.NumPlayers();
  if (static_cast<int>(event.size()) != n) {
    throw BibceError("event must list a type subset per player");
  }
  for (int i = 0; i < n; ++i) {
    if (game.NumActions(i) != 2) {
      throw BibceError("common-belief events need binary actions");
    }
  }
  std::vector<std::set<int>> in_event(n);
  for (int i = 0; i < n; ++i) in_event[i].insert(event[i].begin(), event[i].end());

  std::optional<Rational> lo, hi;
  for (int i = 0; i < n; ++i) {
    for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
      for (int s = 0; s < game.NumStates(i); ++s) {
        const Rational& u = game.Payoff(i, a, s);
        if (!lo || u < *lo) lo = u;
        if (!hi || u > *hi) hi = u;
      }
    }
  }
  const Rational bonus = *hi - *lo + 1;

  std::vector<std::vector<std::string>> actions(n), types(n), states(n);
  for (int i = 0; i < n; ++i) {
    actions[i] = game.Actions(i);
    types[i] = game.Types(i);
    states[i] = game.States(i);
    for (const std::string& s : game.States(i)) states[i].push_back(s + "~0");
  }
  CommonBeliefResult out;
  out.fictitious = Game(game.Players(), actions, types, states);
  for (int i = 0; i < n; ++i) {
    const int m = game.NumStates(i);
    for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
      for (int s = 0; s < m; ++s) {
        const Rational& u = game.Payoff(i, a, s);
        out.fictitious.SetPayoff(i, a, s, u);
        out.fictitious.SetPayoff(i, a, s + m,
                                 game.ActionOf(a, i) == 0 ? u + bonus : u);
      }
    }
  }
  Rational event_mass = 0;
  for (const auto& [cell, mass] : game.Prior()) {
    Cell moved = cell;
    bool inside = true;
    for (int i = 0; i < n; ++i) {
      if (!in_event[i].count(cell.types[i])) {
        moved.states[i] += game.NumStates(i);
        inside = false;
      }
    }
    if (inside) event_mass += mass;
    out.fictitious.AddPrior(moved, mass);
  }
  out.epsilon = 1 - event_mass;
  out.largest = ExtremalBneSupermodular(out.fictitious, Extreme::kTop);

  SupportSets support = ComputeSupport(game);
  out.cb.assign(n, {});
  std::vector<std::set<int>> in_cb(n);
  for (int i = 0; i < n; ++i) {
    for (int t : support.types[i]) {
      if (in_event[i].count(t) && out.largest[i][t] == 1) {
        out.cb[i].push_back(t);
        in_cb[i].insert(t);
      }
    }
  }
  for (const auto& [cell, mass] : game.Prior()) {
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) inside = in_cb[i].count(cell.types[i]) > 0;
    if (inside) out.cb_mass += mass;
  }
  if (v) {
    out.bound = 1 - Kappa(game, *v) * out.epsilon;
    out.bound_holds = out.cb_mass >= *out.bound;
  }
  return out;
}

}  // namespace bibce
