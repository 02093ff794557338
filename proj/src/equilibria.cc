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

#include "bibce/equilibria.h"

#include <algorithm>
#include <random>

#include "bibce/supermodular.h"

namespace bibce {
namespace {

// Prior cells grouped by (player, own type).
using CellRef = const std::pair<const Cell, Rational>*;

std::vector<std::vector<std::vector<CellRef>>> CellsByType(const Game& game) {
  std::vector<std::vector<std::vector<CellRef>>> out(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) out[i].resize(game.NumTypes(i));
  for (const auto& entry : game.Prior()) {
    for (int i = 0; i < game.NumPlayers(); ++i) {
      out[i][entry.first.types[i]].push_back(&entry);
    }
  }
  return out;
}

ActionIndex ProfileAt(const Game& game, const PureProfile& pure, const Cell& cell,
                      int player, int action) {
  Profile a(game.NumPlayers());
  for (int j = 0; j < game.NumPlayers(); ++j) {
    a[j] = j == player ? action : pure[j][cell.types[j]];
  }
  return game.Encode(a);
}

Rational InterimPayoffCells(const Game& game, const std::vector<CellRef>& cells,
                            const PureProfile& pure, int player, int action) {
  Rational total = 0;
  for (CellRef c : cells) {
    ActionIndex a = ProfileAt(game, pure, c->first, player, action);
    total += c->second * game.Payoff(player, a, c->first.states[player]);
  }
  return total;
}

// Opponent (player, type) pairs that type t_i of player i can meet.
std::vector<std::pair<int, int>> OpponentTypes(const std::vector<CellRef>& cells,
                                               int player) {
  std::set<std::pair<int, int>> seen;
  for (CellRef c : cells) {
    for (std::size_t j = 0; j < c->first.types.size(); ++j) {
      if (static_cast<int>(j) != player) {
        seen.insert({static_cast<int>(j), c->first.types[j]});
      }
    }
  }
  return {seen.begin(), seen.end()};
}

constexpr std::size_t kMaxSelections = 1 << 16;

bool StrictlyDominated(const Game& game, const std::vector<CellRef>& cells,
                       const SurvivorSets& sets, int player, int type,
                       int action) {
  const std::vector<int>& own = sets[player][type];
  if (own.size() <= 1) return false;
  std::vector<std::pair<int, int>> opp = OpponentTypes(cells, player);
  std::size_t count = 1;
  for (const auto& [j, t] : opp) {
    count *= sets[j][t].size();
    if (count > kMaxSelections) {
      throw BibceError("too many opponent selections for dominance check");
    }
  }
  PureProfile pure(game.NumPlayers());
  for (int j = 0; j < game.NumPlayers(); ++j) {
    pure[j].assign(game.NumTypes(j), 0);
  }
  // payoff[s][k]: selection s, own action own[k].
  std::vector<std::vector<Rational>> payoff;
  std::vector<std::size_t> digit(opp.size(), 0);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t k = 0; k < opp.size(); ++k) {
      pure[opp[k].first][opp[k].second] = sets[opp[k].first][opp[k].second][digit[k]];
    }
    std::vector<Rational> row;
    for (int b : own) row.push_back(InterimPayoffCells(game, cells, pure, player, b));
    payoff.push_back(std::move(row));
    for (std::size_t k = 0; k < opp.size(); ++k) {
      if (++digit[k] < sets[opp[k].first][opp[k].second].size()) break;
      digit[k] = 0;
    }
  }
  const std::size_t self =
      std::find(own.begin(), own.end(), action) - own.begin();
  // Pure dominators first; with two survivors that is the whole story.
  for (std::size_t k = 0; k < own.size(); ++k) {
    if (k == self) continue;
    bool all = true;
    for (const auto& row : payoff) {
      if (row[k] <= row[self]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  if (own.size() == 2) return false;
  LinearProgram lp;
  std::vector<int> mix(own.size(), -1);
  LinearTerm simplex;
  for (std::size_t k = 0; k < own.size(); ++k) {
    if (k == self) continue;
    mix[k] = lp.AddVariable("m" + std::to_string(own[k]));
    simplex.emplace_back(mix[k], 1);
  }
  int slack = lp.AddVariable("s", true);
  lp.AddConstraint(simplex, Relation::kEq, 1);
  for (const auto& row : payoff) {
    LinearTerm terms;
    for (std::size_t k = 0; k < own.size(); ++k) {
      if (k != self && row[k] != 0) terms.emplace_back(mix[k], row[k]);
    }
    terms.emplace_back(slack, -1);
    lp.AddConstraint(terms, Relation::kGe, row[self]);
  }
  lp.SetObjective({{{slack, 1}}, Sense::kMaximize});
  LpOutcome out = Solve(lp);
  return out.status == LpStatus::kOptimal && out.value > 0;
}

}  // namespace

RuleBlock AddRuleBlock(const Game& game, LinearProgram& lp,
                       const RuleOptions& options, const std::string& prefix) {
  RuleBlock block;
  const int n = game.NumPlayers();
  const ActionIndex profiles = game.NumActionProfiles();
  int cell_id = 0;
  for (const auto& [cell, mass] : game.Prior()) {
    LinearTerm row;
    for (ActionIndex a = 0; a < profiles; ++a) {
      RuleKey key{cell, a};
      int col = lp.AddVariable(prefix + "z" + std::to_string(cell_id) + "_" +
                               std::to_string(a));
      block.keys.push_back(key);
      block.index.push_back(col);
      block.lookup[key] = col;
      row.emplace_back(col, 1);
    }
    lp.AddConstraint(row, Relation::kEq, mass, prefix + "prior" + std::to_string(cell_id));
    ++cell_id;
  }

  if (options.belief_invariant) {
    std::vector<std::map<int, Rational>> type_mass(n);
    for (const auto& [cell, mass] : game.Prior()) {
      for (int i = 0; i < n; ++i) type_mass[i][cell.types[i]] += mass;
    }
    for (int i = 0; i < n; ++i) {
      for (const auto& [t, m] : type_mass[i]) {
        for (int ai = 0; ai < game.NumActions(i); ++ai) {
          int col = lp.AddVariable(prefix + "w" + std::to_string(i) + "_" +
                                   std::to_string(t) + "_" + std::to_string(ai));
          block.marginal[{i, {ai, t}}] = col;
        }
      }
    }
    cell_id = 0;
    for (const auto& [cell, mass] : game.Prior()) {
      for (int i = 0; i < n; ++i) {
        const Rational ratio = mass / type_mass[i][cell.types[i]];
        std::vector<LinearTerm> rows(game.NumActions(i));
        for (ActionIndex a = 0; a < profiles; ++a) {
          rows[game.ActionOf(a, i)].emplace_back(block.lookup[{cell, a}], 1);
        }
        for (int ai = 0; ai < game.NumActions(i); ++ai) {
          rows[ai].emplace_back(block.marginal[{i, {ai, cell.types[i]}}], -ratio);
          lp.AddConstraint(rows[ai], Relation::kEq, 0,
                           prefix + "bi" + std::to_string(cell_id) + "_" +
                               std::to_string(i) + "_" + std::to_string(ai));
        }
      }
      ++cell_id;
    }
  }

  if (options.obedient) {
    auto cells = CellsByType(game);
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < game.NumTypes(i); ++t) {
        if (cells[i][t].empty()) continue;
        for (int ai = 0; ai < game.NumActions(i); ++ai) {
          for (int dev = 0; dev < game.NumActions(i); ++dev) {
            if (dev == ai) continue;
            LinearTerm row;
            for (CellRef c : cells[i][t]) {
              const int s = c->first.states[i];
              for (ActionIndex a = 0; a < profiles; ++a) {
                if (game.ActionOf(a, i) != ai) continue;
                Rational gain = game.Payoff(i, a, s) -
                                game.Payoff(i, game.WithAction(a, i, dev), s);
                if (gain != 0) row.emplace_back(block.lookup[{c->first, a}], gain);
              }
            }
            if (row.empty()) continue;
            lp.AddConstraint(row, Relation::kGe, 0,
                             prefix + "ob" + std::to_string(i) + "_" +
                                 std::to_string(t) + "_" + std::to_string(ai) +
                                 "_" + std::to_string(dev));
          }
        }
      }
    }
  }
  return block;
}

DistributionalRule ExtractRule(const RuleBlock& block,
                               const std::vector<Rational>& x) {
  DistributionalRule rule;
  for (std::size_t k = 0; k < block.keys.size(); ++k) {
    const Rational& v = x[block.index[k]];
    if (v != 0) rule.mass[block.keys[k]] = v;
  }
  return rule;
}

EquilibriumPolytope BceConstraints(const Game& game) {
  EquilibriumPolytope p{PolytopeKind::kBce, LinearProgram(), RuleBlock()};
  p.block = AddRuleBlock(game, p.lp, {false, true}, "");
  return p;
}

EquilibriumPolytope BibceConstraints(const Game& game) {
  EquilibriumPolytope p{PolytopeKind::kBibce, LinearProgram(), RuleBlock()};
  p.block = AddRuleBlock(game, p.lp, {true, true}, "");
  return p;
}

DistributionalRule FindBibce(const Game& game) {
  EquilibriumPolytope p = BibceConstraints(game);
  LpOutcome out = Solve(p.lp);
  if (out.status != LpStatus::kOptimal) {
    throw TheoryViolation("BIBCE polytope is empty");
  }
  return ExtractRule(p.block, out.point);
}

DistributionalRule FindBce(const Game& game) {
  EquilibriumPolytope p = BceConstraints(game);
  LpOutcome out = Solve(p.lp);
  if (out.status != LpStatus::kOptimal) {
    throw TheoryViolation("BCE polytope is empty");
  }
  return ExtractRule(p.block, out.point);
}

std::vector<std::string> CheckObedience(const Game& game,
                                        const DistributionalRule& rule) {
  std::map<std::vector<int>, Rational> gain;
  for (const auto& [key, z] : rule.mass) {
    for (int i = 0; i < game.NumPlayers(); ++i) {
      const int t = key.cell.types[i];
      const int s = key.cell.states[i];
      const int ai = game.ActionOf(key.action, i);
      for (int dev = 0; dev < game.NumActions(i); ++dev) {
        if (dev == ai) continue;
        gain[{i, t, ai, dev}] +=
            z * (game.Payoff(i, key.action, s) -
                 game.Payoff(i, game.WithAction(key.action, i, dev), s));
      }
    }
  }
  std::vector<std::string> out;
  for (const auto& [k, g] : gain) {
    if (g < 0) {
      out.push_back("player " + game.Players()[k[0]] + " type " +
                    game.Types(k[0])[k[1]] + " gains " + ToString(-g) +
                    " by playing " + game.Actions(k[0])[k[3]] + " for " +
                    game.Actions(k[0])[k[2]]);
    }
  }
  return out;
}

std::vector<std::string> CheckBeliefInvariance(const Game& game,
                                               const DistributionalRule& rule) {
  std::map<Cell, std::vector<std::vector<Rational>>> own;  // [i][a_i]
  for (const auto& [key, z] : rule.mass) {
    auto& slot = own[key.cell];
    if (slot.empty()) {
      for (int i = 0; i < game.NumPlayers(); ++i) {
        slot.emplace_back(game.NumActions(i));
      }
    }
    for (int i = 0; i < game.NumPlayers(); ++i) {
      slot[i][game.ActionOf(key.action, i)] += z;
    }
  }
  std::vector<std::string> out;
  std::map<std::pair<int, int>, std::vector<Rational>> seen;
  for (const auto& [cell, mass] : game.Prior()) {
    auto it = own.find(cell);
    for (int i = 0; i < game.NumPlayers(); ++i) {
      std::vector<Rational> cond(game.NumActions(i));
      if (it != own.end()) {
        for (int a = 0; a < game.NumActions(i); ++a) {
          cond[a] = it->second[i][a] / mass;
        }
      }
      auto [slot, inserted] = seen.emplace(std::make_pair(i, cell.types[i]), cond);
      if (!inserted && slot->second != cond) {
        out.push_back("player " + game.Players()[i] + " type " +
                      game.Types(i)[cell.types[i]] +
                      ": own recommendation depends on the cell");
      }
    }
  }
  return out;
}

std::vector<std::string> CheckBce(const Game& game,
                                  const DistributionalRule& rule) {
  std::vector<std::string> out = CheckRuleConsistency(game, rule);
  for (auto& v : CheckObedience(game, rule)) out.push_back(std::move(v));
  return out;
}

std::vector<std::string> CheckBibce(const Game& game,
                                    const DistributionalRule& rule) {
  std::vector<std::string> out = CheckBce(game, rule);
  for (auto& v : CheckBeliefInvariance(game, rule)) out.push_back(std::move(v));
  return out;
}

StrategyProfile FromPure(const Game& game, const PureProfile& pure) {
  StrategyProfile out;
  out.prob.resize(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) {
    for (int t = 0; t < game.NumTypes(i); ++t) {
      std::vector<Rational> row(game.NumActions(i));
      row[pure[i][t]] = 1;
      out.prob[i].push_back(std::move(row));
    }
  }
  return out;
}

DistributionalRule RuleFromProfile(const Game& game,
                                   const StrategyProfile& profile) {
  DistributionalRule rule;
  for (const auto& [cell, mass] : game.Prior()) {
    for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
      Rational z = mass;
      for (int i = 0; i < game.NumPlayers() && z != 0; ++i) {
        z *= profile.prob[i][cell.types[i]][game.ActionOf(a, i)];
      }
      if (z != 0) rule.mass[{cell, a}] = z;
    }
  }
  return rule;
}

DistributionalRule RuleFromPure(const Game& game, const PureProfile& pure) {
  return RuleFromProfile(game, FromPure(game, pure));
}

Rational InterimPayoff(const Game& game, const PureProfile& pure, int player,
                       int type, int action) {
  Rational total = 0;
  for (const auto& [cell, mass] : game.Prior()) {
    if (cell.types[player] != type) continue;
    ActionIndex a = ProfileAt(game, pure, cell, player, action);
    total += mass * game.Payoff(player, a, cell.states[player]);
  }
  return total;
}

bool IsPureBne(const Game& game, const PureProfile& pure) {
  auto cells = CellsByType(game);
  for (int i = 0; i < game.NumPlayers(); ++i) {
    for (int t = 0; t < game.NumTypes(i); ++t) {
      if (cells[i][t].empty()) continue;
      Rational chosen = InterimPayoffCells(game, cells[i][t], pure, i, pure[i][t]);
      for (int b = 0; b < game.NumActions(i); ++b) {
        if (InterimPayoffCells(game, cells[i][t], pure, i, b) > chosen) return false;
      }
    }
  }
  return true;
}

std::vector<PureProfile> EnumeratePureBne(const Game& game) {
  SupportSets support = ComputeSupport(game);
  if (game.NumPlayers() > 2) throw BibceError("pure BNE enumeration refused: too many players");
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    if (game.NumActions(i) > 3 || support.types[i].size() > 3) {
      throw BibceError("pure BNE enumeration refused: instance too large");
    }
    for (int t : support.types[i]) slots.emplace_back(i, t);
  }
  PureProfile pure(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) pure[i].assign(game.NumTypes(i), 0);
  std::vector<PureProfile> out;
  while (true) {
    if (IsPureBne(game, pure)) out.push_back(pure);
    std::size_t k = 0;
    for (; k < slots.size(); ++k) {
      auto [i, t] = slots[k];
      if (++pure[i][t] < game.NumActions(i)) break;
      pure[i][t] = 0;
    }
    if (k == slots.size()) break;
  }
  return out;
}

SurvivorSets IteratedStrictDominance(const Game& game,
                                     std::optional<std::uint64_t> seed) {
  auto cells = CellsByType(game);
  SurvivorSets sets(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) {
    for (int t = 0; t < game.NumTypes(i); ++t) {
      std::vector<int> all(game.NumActions(i));
      for (int a = 0; a < game.NumActions(i); ++a) all[a] = a;
      sets[i].push_back(std::move(all));
    }
  }
  auto remove = [&](int i, int t, int a) {
    auto& s = sets[i][t];
    s.erase(std::find(s.begin(), s.end(), a));
  };
  if (!seed) {
    while (true) {
      std::vector<std::vector<int>> doomed;
      for (int i = 0; i < game.NumPlayers(); ++i) {
        for (int t = 0; t < game.NumTypes(i); ++t) {
          if (cells[i][t].empty()) continue;
          for (int a : sets[i][t]) {
            if (StrictlyDominated(game, cells[i][t], sets, i, t, a)) {
              doomed.push_back({i, t, a});
            }
          }
        }
      }
      if (doomed.empty()) return sets;
      for (const auto& d : doomed) remove(d[0], d[1], d[2]);
    }
  }
  std::mt19937_64 rng(*seed);
  while (true) {
    std::vector<std::vector<int>> candidates;
    for (int i = 0; i < game.NumPlayers(); ++i) {
      for (int t = 0; t < game.NumTypes(i); ++t) {
        if (cells[i][t].empty()) continue;
        for (int a : sets[i][t]) candidates.push_back({i, t, a});
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    bool removed = false;
    for (const auto& c : candidates) {
      if (StrictlyDominated(game, cells[c[0]][c[1]], sets, c[0], c[1], c[2])) {
        remove(c[0], c[1], c[2]);
        removed = true;
        break;
      }
    }
    if (!removed) return sets;
  }
}

PureProfile ExtremalBneSupermodular(const Game& game, Extreme from) {
  SupermodularityReport report = IsSupermodular(game);
  if (!report.ok) {
    throw BibceError("game is not supermodular: " + report.violations.front());
  }
  auto cells = CellsByType(game);
  PureProfile x(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) {
    x[i].assign(game.NumTypes(i), from == Extreme::kTop ? game.NumActions(i) - 1 : 0);
  }
  std::size_t bound = 1;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    bound += static_cast<std::size_t>(game.NumTypes(i)) * game.NumActions(i);
  }
  for (std::size_t round = 0; round <= bound; ++round) {
    PureProfile next = x;
    for (int i = 0; i < game.NumPlayers(); ++i) {
      for (int t = 0; t < game.NumTypes(i); ++t) {
        if (cells[i][t].empty()) continue;
        int best = -1;
        Rational best_value;
        for (int a = 0; a < game.NumActions(i); ++a) {
          Rational v = InterimPayoffCells(game, cells[i][t], x, i, a);
          bool take = best < 0 || v > best_value ||
                      (v == best_value && from == Extreme::kTop);
          if (take) {
            best = a;
            best_value = v;
          }
        }
        next[i][t] = best;
      }
    }
    if (next == x) {
      if (!IsPureBne(game, x)) {
        throw TheoryViolation("best-response fixed point is not a BNE");
      }
      return x;
    }
    x = std::move(next);
  }
  throw TheoryViolation("monotone best-response iteration did not converge");
}

bool OutcomeEquivalent(const DistributionalRule& rule_a, const TypeMap& tau,
                       const StateMap& phi, const DistributionalRule& rule_b) {
  DistributionalRule pushed = Pushforward(rule_a, tau, phi);
  DistributionalRule b;
  for (const auto& [k, v] : rule_b.mass) {
    if (v != 0) b.mass[k] = v;
  }
  return pushed == b;
}

}  // namespace bibce
