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

#include "bibce/game.h"

#include <algorithm>
#include <numeric>

namespace bibce {
namespace {

int IndexOf(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

bool InRange(const Profile& p, const std::vector<std::vector<std::string>>& sets) {
  if (p.size() != sets.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= static_cast<int>(sets[i].size())) return false;
  }
  return true;
}

}  // namespace

Game::Game(std::vector<std::string> players,
           std::vector<std::vector<std::string>> actions,
           std::vector<std::vector<std::string>> types,
           std::vector<std::vector<std::string>> payoff_states)
    : players_(std::move(players)),
      actions_(std::move(actions)),
      types_(std::move(types)),
      states_(std::move(payoff_states)) {
  const std::size_t n = players_.size();
  if (actions_.size() != n || types_.size() != n || states_.size() != n) {
    throw BibceError("per-player lists do not match the number of players");
  }
  stride_.resize(n);
  num_profiles_ = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride_[i] = num_profiles_;
    num_profiles_ *= std::max<std::size_t>(actions_[i].size(), 1);
  }
  payoffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    payoffs_[i].assign(num_profiles_ * states_[i].size(), Rational(0));
  }
}

int Game::FindAction(int i, const std::string& name) const {
  return IndexOf(actions_[i], name);
}
int Game::FindType(int i, const std::string& name) const {
  return IndexOf(types_[i], name);
}
int Game::FindState(int i, const std::string& name) const {
  return IndexOf(states_[i], name);
}

void Game::AddPrior(const Cell& cell, const Rational& mass) {
  if (mass == 0) return;
  Rational& slot = prior_[cell];
  slot += mass;
  if (slot == 0) prior_.erase(cell);
}

Rational Game::PriorOf(const Cell& cell) const {
  auto it = prior_.find(cell);
  return it == prior_.end() ? Rational(0) : it->second;
}

Rational Game::TypeMarginal(int i, int type) const {
  Rational total = 0;
  for (const auto& [cell, mass] : prior_) {
    if (cell.types[i] == type) total += mass;
  }
  return total;
}

Rational Game::StateMarginal(int i, int state) const {
  Rational total = 0;
  for (const auto& [cell, mass] : prior_) {
    if (cell.states[i] == state) total += mass;
  }
  return total;
}

void Game::SetPayoff(int i, ActionIndex a, int own_state,
                     const Rational& value) {
  if (i < 0 || i >= NumPlayers() || a >= num_profiles_ || own_state < 0 ||
      own_state >= NumStates(i)) {
    throw BibceError("payoff key out of range for player " + std::to_string(i));
  }
  payoffs_[i][a * states_[i].size() + own_state] = value;
}

ActionIndex Game::Encode(const Profile& actions) const {
  ActionIndex a = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    a += static_cast<ActionIndex>(actions[i]) * stride_[i];
  }
  return a;
}

Profile Game::Decode(ActionIndex a) const {
  Profile out(players_.size());
  for (int i = 0; i < NumPlayers(); ++i) out[i] = ActionOf(a, i);
  return out;
}

std::string Game::ProfileName(ActionIndex a) const {
  std::string out = "(";
  for (int i = 0; i < NumPlayers(); ++i) {
    if (i > 0) out += ",";
    out += actions_[i][ActionOf(a, i)];
  }
  return out + ")";
}

bool Game::operator==(const Game& other) const {
  return players_ == other.players_ && actions_ == other.actions_ &&
         types_ == other.types_ && states_ == other.states_ &&
         prior_ == other.prior_ && payoffs_ == other.payoffs_;
}

SupportSets ComputeSupport(const Game& game) {
  SupportSets s;
  s.types.resize(game.NumPlayers());
  s.states.resize(game.NumPlayers());
  for (const auto& [cell, mass] : game.Prior()) {
    if (mass <= 0) continue;
    for (int i = 0; i < game.NumPlayers(); ++i) {
      s.types[i].insert(cell.types[i]);
      s.states[i].insert(cell.states[i]);
    }
  }
  return s;
}

ValidationReport ValidateGame(const Game& game) {
  ValidationReport report;
  auto& v = report.violations;
  if (game.NumPlayers() == 0) v.push_back("no players");
  std::vector<std::vector<std::string>> types, states;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    const std::string& who = game.Players()[i];
    if (game.NumActions(i) == 0) v.push_back("empty action set for " + who);
    if (game.NumTypes(i) == 0) v.push_back("empty type set for " + who);
    if (game.NumStates(i) == 0) v.push_back("empty payoff-state set for " + who);
    types.push_back(game.Types(i));
    states.push_back(game.States(i));
  }
  Rational total = 0;
  for (const auto& [cell, mass] : game.Prior()) {
    if (!InRange(cell.types, types)) v.push_back("dangling type key in prior");
    if (!InRange(cell.states, states)) v.push_back("dangling state key in prior");
    if (mass < 0) v.push_back("negative prior mass " + ToString(mass));
    total += mass;
  }
  if (total != 1) v.push_back("prior mass " + ToString(total));
  report.support = ComputeSupport(game);
  return report;
}

Game MinimumRepresentation(const Game& game) {
  SupportSets support = ComputeSupport(game);
  Rational total = 0;
  for (const auto& [cell, mass] : game.Prior()) total += mass;
  if (game.Prior().empty() || total <= 0) throw BibceError("degenerate prior");
  const int n = game.NumPlayers();
  std::vector<std::vector<int>> type_index(n), state_index(n);
  std::vector<std::vector<std::string>> types(n), states(n);
  for (int i = 0; i < n; ++i) {
    type_index[i].assign(game.NumTypes(i), -1);
    state_index[i].assign(game.NumStates(i), -1);
    for (int t : support.types[i]) {
      type_index[i][t] = static_cast<int>(types[i].size());
      types[i].push_back(game.Types(i)[t]);
    }
    for (int s : support.states[i]) {
      state_index[i][s] = static_cast<int>(states[i].size());
      states[i].push_back(game.States(i)[s]);
    }
  }
  std::vector<std::vector<std::string>> actions(n);
  for (int i = 0; i < n; ++i) actions[i] = game.Actions(i);
  Game out(game.Players(), actions, types, states);
  for (const auto& [cell, mass] : game.Prior()) {
    Cell c = cell;
    for (int i = 0; i < n; ++i) {
      c.types[i] = type_index[i][cell.types[i]];
      c.states[i] = state_index[i][cell.states[i]];
    }
    out.AddPrior(c, mass / total);
  }
  for (int i = 0; i < n; ++i) {
    for (int s : support.states[i]) {
      for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
        out.SetPayoff(i, a, state_index[i][s], game.Payoff(i, a, s));
      }
    }
  }
  return out;
}

QuotientResult NonRedundantRepresentation(const Game& game) {
  const int n = game.NumPlayers();
  std::vector<Rational> marginal_cache;
  std::vector<std::vector<Rational>> type_mass(n);
  for (int i = 0; i < n; ++i) {
    type_mass[i].assign(game.NumTypes(i), Rational(0));
  }
  for (const auto& [cell, mass] : game.Prior()) {
    for (int i = 0; i < n; ++i) type_mass[i][cell.types[i]] += mass;
  }

  // Round 0 groups types by first-order belief over states; later rounds
  // split classes by beliefs over (state, opponent classes).
  std::vector<std::vector<int>> cls(n);
  for (int i = 0; i < n; ++i) cls[i].assign(game.NumTypes(i), 0);
  bool include_opponents = false;
  while (true) {
    std::vector<std::vector<int>> next(n);
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      using Signature = std::map<std::pair<Profile, Profile>, Rational>;
      std::vector<Signature> sig(game.NumTypes(i));
      for (const auto& [cell, mass] : game.Prior()) {
        int t = cell.types[i];
        Profile opp;
        if (include_opponents) {
          for (int j = 0; j < n; ++j) {
            if (j != i) opp.push_back(cls[j][cell.types[j]]);
          }
        }
        sig[t][{cell.states, opp}] += mass / type_mass[i][t];
      }
      std::map<std::pair<int, Signature>, int> ids;
      next[i].assign(game.NumTypes(i), 0);
      for (int t = 0; t < game.NumTypes(i); ++t) {
        auto key = std::make_pair(cls[i][t], sig[t]);
        auto it = ids.find(key);
        if (it == ids.end()) {
          it = ids.emplace(key, static_cast<int>(ids.size())).first;
        }
        next[i][t] = it->second;
      }
      int before = *std::max_element(cls[i].begin(), cls[i].end()) + 1;
      if (static_cast<int>(ids.size()) != before) changed = true;
    }
    cls = std::move(next);
    if (!changed && include_opponents) break;
    include_opponents = true;
  }

  std::vector<std::vector<std::string>> types(n), actions(n), states(n);
  for (int i = 0; i < n; ++i) {
    int k = *std::max_element(cls[i].begin(), cls[i].end()) + 1;
    types[i].assign(k, "");
    for (int t = 0; t < game.NumTypes(i); ++t) {
      std::string& name = types[i][cls[i][t]];
      name += (name.empty() ? "" : "+") + game.Types(i)[t];
    }
    actions[i] = game.Actions(i);
    states[i] = game.States(i);
  }
  QuotientResult out{Game(game.Players(), actions, types, states), {cls}};
  for (const auto& [cell, mass] : game.Prior()) {
    Cell c = cell;
    for (int i = 0; i < n; ++i) c.types[i] = cls[i][cell.types[i]];
    out.game.AddPrior(c, mass);
  }
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < game.NumStates(i); ++s) {
      for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
        out.game.SetPayoff(i, a, s, game.Payoff(i, a, s));
      }
    }
  }
  return out;
}

Rational SupEventDistance(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  Rational positive = 0, negative = 0;
  auto accumulate = [&](const Rational& d) {
    if (d > 0) positive += d;
    else negative -= d;
  };
  for (const auto& [atom, m] : mu) {
    auto it = nu.find(atom);
    accumulate(it == nu.end() ? m : Rational(m - it->second));
  }
  for (const auto& [atom, m] : nu) {
    if (!mu.count(atom)) accumulate(-m);
  }
  return positive > negative ? positive : negative;
}

FiniteMeasure ToMeasure(const DistributionalRule& rule) {
  FiniteMeasure out;
  for (const auto& [key, mass] : rule.mass) {
    Atom atom;
    atom.push_back(static_cast<int>(key.action));
    atom.insert(atom.end(), key.cell.types.begin(), key.cell.types.end());
    atom.insert(atom.end(), key.cell.states.begin(), key.cell.states.end());
    out[atom] += mass;
  }
  return out;
}

std::vector<std::string> CheckRuleConsistency(const Game& game,
                                              const DistributionalRule& rule) {
  std::vector<std::string> problems;
  std::map<Cell, Rational> sums;
  for (const auto& [key, mass] : rule.mass) {
    if (mass < 0) problems.push_back("negative rule mass");
    if (key.action >= game.NumActionProfiles()) {
      problems.push_back("action profile out of range");
    }
    sums[key.cell] += mass;
  }
  for (const auto& [cell, mass] : sums) {
    if (mass != game.PriorOf(cell)) {
      problems.push_back("rule mass does not match prior at a cell");
    }
  }
  for (const auto& [cell, mass] : game.Prior()) {
    if (!sums.count(cell)) problems.push_back("rule misses a support cell");
  }
  return problems;
}

TypeMap IdentityTypeMap(const Game& game) {
  TypeMap tau;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::vector<int> m(game.NumTypes(i));
    std::iota(m.begin(), m.end(), 0);
    tau.map.push_back(std::move(m));
  }
  return tau;
}

StateMap StateMapByName(const Game& perturbed, const Game& base) {
  StateMap phi;
  for (int i = 0; i < perturbed.NumPlayers(); ++i) {
    std::vector<int> m;
    for (const auto& name : perturbed.States(i)) {
      int idx = base.FindState(i, name);
      m.push_back(idx < 0 ? kOffSupport : idx);
    }
    phi.map.push_back(std::move(m));
  }
  return phi;
}

Cell MapCell(const Cell& cell, const TypeMap& tau, const StateMap& phi) {
  Cell out = cell;
  bool off = false;
  for (std::size_t i = 0; i < cell.types.size(); ++i) {
    int t = cell.types[i];
    if (t < 0 || t >= static_cast<int>(tau.map[i].size()) || tau.map[i][t] < 0) {
      throw BibceError("type map is not total on the rule's support");
    }
    out.types[i] = tau.map[i][t];
    int s = cell.states[i];
    out.states[i] = (s < 0 || s >= static_cast<int>(phi.map[i].size()))
                        ? kOffSupport
                        : phi.map[i][s];
    if (out.states[i] == kOffSupport) off = true;
  }
  if (off) std::fill(out.states.begin(), out.states.end(), kOffSupport);
  return out;
}

DistributionalRule Pushforward(const DistributionalRule& rule,
                               const TypeMap& tau, const StateMap& phi) {
  DistributionalRule out;
  for (const auto& [key, mass] : rule.mass) {
    if (mass == 0) continue;
    out.mass[{MapCell(key.cell, tau, phi), key.action}] += mass;
  }
  return out;
}

std::map<Cell, Rational> PushforwardPrior(const Game& perturbed,
                                          const TypeMap& tau,
                                          const StateMap& phi) {
  std::map<Cell, Rational> out;
  for (const auto& [cell, mass] : perturbed.Prior()) {
    out[MapCell(cell, tau, phi)] += mass;
  }
  return out;
}

bool IsBeliefInvariant(const Game& game, const CommunicationRule& rho) {
  const int n = game.NumPlayers();
  // marginal[i][(t_i, m_i)] as first seen; every later cell must agree.
  std::vector<std::map<std::pair<int, int>, Rational>> marginal(n);
  for (const auto& [cell, mass] : game.Prior()) {
    auto it = rho.dist.find(cell);
    if (it == rho.dist.end()) return false;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> own(rho.messages[i].size());
      for (const auto& [m, p] : it->second) own[m[i]] += p;
      for (int mi = 0; mi < static_cast<int>(own.size()); ++mi) {
        auto key = std::make_pair(cell.types[i], mi);
        auto [slot, inserted] = marginal[i].emplace(key, own[mi]);
        if (!inserted && slot->second != own[mi]) return false;
      }
    }
  }
  return true;
}

ConjunctionResult Conjunction(const Game& game, const CommunicationRule& rho) {
  const int n = game.NumPlayers();
  std::vector<std::vector<std::string>> types(n), actions(n), states(n);
  TypeMap projection;
  projection.map.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < game.NumTypes(i); ++t) {
      for (const auto& m : rho.messages[i]) {
        types[i].push_back(game.Types(i)[t] + "|" + m);
        projection.map[i].push_back(t);
      }
    }
    actions[i] = game.Actions(i);
    states[i] = game.States(i);
  }
  ConjunctionResult out{Game(game.Players(), actions, types, states),
                        projection};
  for (const auto& [cell, mass] : game.Prior()) {
    auto it = rho.dist.find(cell);
    if (it == rho.dist.end()) {
      throw BibceError("communication rule undefined on a support cell");
    }
    Rational row = 0;
    for (const auto& [m, p] : it->second) {
      if (p < 0) throw BibceError("negative communication probability");
      row += p;
      Cell c = cell;
      for (int i = 0; i < n; ++i) {
        c.types[i] = cell.types[i] * static_cast<int>(rho.messages[i].size()) + m[i];
      }
      out.game.AddPrior(c, mass * p);
    }
    if (row != 1) throw BibceError("communication rule row does not sum to 1");
  }
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < game.NumStates(i); ++s) {
      for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
        out.game.SetPayoff(i, a, s, game.Payoff(i, a, s));
      }
    }
  }
  return out;
}

DistributionalRule LiftRule(const Game& base, const DistributionalRule& rule,
                            const Game& elaborated, const TypeMap& tau) {
  std::map<Cell, std::vector<std::pair<ActionIndex, Rational>>> by_cell;
  for (const auto& [key, mass] : rule.mass) {
    by_cell[key.cell].emplace_back(key.action, mass);
  }
  DistributionalRule out;
  for (const auto& [cell, mass] : elaborated.Prior()) {
    Cell base_cell = cell;
    for (int i = 0; i < elaborated.NumPlayers(); ++i) {
      base_cell.types[i] = tau.map[i][cell.types[i]];
    }
    Rational base_mass = base.PriorOf(base_cell);
    auto it = by_cell.find(base_cell);
    if (base_mass == 0 || it == by_cell.end()) {
      throw BibceError("lifted cell has no base counterpart");
    }
    for (const auto& [a, z] : it->second) {
      out.mass[{cell, a}] += z / base_mass * mass;
    }
  }
  return out;
}

}  // namespace bibce
