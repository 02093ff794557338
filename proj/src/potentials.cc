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

#include "bibce/potentials.h"

#include <algorithm>
#include <set>

namespace bibce {
namespace {

int FindStateIndex(const std::vector<Profile>& states, const Profile& s) {
  auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || *it != s) return -1;
  return static_cast<int>(it - states.begin());
}

void RequireBinary(const Game& game) {
  for (int i = 0; i < game.NumPlayers(); ++i) {
    if (game.NumActions(i) != 2) {
      throw BibceError("monotone potentials need exactly two actions per player");
    }
  }
}

// Index of the all-ones profile in a binary game.
ActionIndex AllOnes(const Game& game) {
  return game.Encode(Profile(game.NumPlayers(), 1));
}

}  // namespace

std::vector<Profile> SupportStates(const Game& game) {
  std::set<Profile> states;
  for (const auto& [cell, mass] : game.Prior()) {
    if (mass > 0) states.insert(cell.states);
  }
  return {states.begin(), states.end()};
}

int PotentialFunction::StateIndex(const Profile& state) const {
  return FindStateIndex(states, state);
}

const Rational& PotentialFunction::ValueAt(ActionIndex a,
                                           const Profile& state) const {
  int k = StateIndex(state);
  if (k < 0) {
    Profile mapped = state;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      bool known = false;
      int first = -1;
      for (const Profile& s : states) {
        if (first < 0 || s[i] < first) first = s[i];
        if (s[i] == state[i]) known = true;
      }
      if (!known) mapped[i] = first;
    }
    k = StateIndex(mapped);
    if (k < 0) throw BibceError("potential undefined at state profile");
  }
  return v[k][a];
}

std::vector<std::string> CheckPotential(const Game& game,
                                        const PotentialFunction& v) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.states.size(); ++k) {
    const Profile& theta = v.states[k];
    for (int i = 0; i < game.NumPlayers(); ++i) {
      for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
        ActionIndex base = game.WithAction(a, i, 0);
        Rational lhs = game.Payoff(i, a, theta[i]) - v.v[k][a];
        Rational rhs = game.Payoff(i, base, theta[i]) - v.v[k][base];
        if (lhs != rhs) {
          out.push_back("potential fails for player " + game.Players()[i] +
                        " at " + game.ProfileName(a));
        }
      }
    }
  }
  return out;
}

PotentialSearch FindPotential(const Game& game) {
  PotentialSearch out;
  const int n = game.NumPlayers();
  const std::size_t profiles = game.NumActionProfiles();
  out.potential.states = SupportStates(game);
  out.potential.q.assign(n, {});
  // Columns: v(a) for all a, then q_i(a_{-i}) keyed by the profile with a_i=0.
  std::vector<std::vector<int>> q_col(n, std::vector<int>(profiles, -1));
  int cols = static_cast<int>(profiles);
  for (int i = 0; i < n; ++i) {
    for (ActionIndex a = 0; a < profiles; ++a) {
      if (game.ActionOf(a, i) == 0) q_col[i][a] = cols++;
    }
  }
  for (const Profile& theta : out.potential.states) {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (int i = 0; i < n; ++i) {
      for (ActionIndex a = 0; a < profiles; ++a) {
        std::vector<Rational> row(cols);
        row[a] = 1;
        row[q_col[i][game.WithAction(a, i, 0)]] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(game.Payoff(i, a, theta[i]));
      }
    }
    LinearSystemResult sol = SolveLinearSystem(rows, rhs);
    if (!sol.feasible) {
      out.feasible = false;
      out.state = theta;
      out.certificate = sol.certificate;
      out.potential = PotentialFunction();
      return out;
    }
    const Rational shift = sol.solution[0];
    std::vector<Rational> v(profiles);
    for (ActionIndex a = 0; a < profiles; ++a) v[a] = sol.solution[a] - shift;
    out.potential.v.push_back(std::move(v));
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> q(profiles);
      for (ActionIndex a = 0; a < profiles; ++a) {
        q[a] = sol.solution[q_col[i][game.WithAction(a, i, 0)]] + shift;
      }
      out.potential.q[i].push_back(std::move(q));
    }
  }
  out.feasible = true;
  return out;
}

RuleMaximum MaximizePotentialBibce(const Game& game, const PotentialFunction& v) {
  RuleMaximum out;
  LinearProgram lp;
  out.block = AddRuleBlock(game, lp, {true, false}, "");
  LinearTerm objective;
  for (std::size_t k = 0; k < out.block.keys.size(); ++k) {
    const RuleKey& key = out.block.keys[k];
    const Rational& value = v.ValueAt(key.action, key.cell.states);
    if (value != 0) objective.emplace_back(out.block.index[k], value);
  }
  lp.SetObjective({objective, Sense::kMaximize});
  LpOutcome sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw TheoryViolation("belief-invariant rules admit no potential maximum");
  }
  out.rule = ExtractRule(out.block, sol.point);
  out.value = sol.value;
  if (!CheckObedience(game, out.rule).empty()) {
    throw BibceError("potential certification bug");
  }
  out.face = lp;
  out.face.AddConstraint(objective, Relation::kEq, sol.value, "pin");
  out.face.ClearObjective();
  return out;
}

bool FaceIsSingleton(const LinearProgram& face, const RuleBlock& block) {
  for (int col : block.index) {
    LinearProgram lp = face;
    lp.SetObjective({{{col, 1}}, Sense::kMaximize});
    LpOutcome hi = Solve(lp);
    lp.SetObjective({{{col, 1}}, Sense::kMinimize});
    LpOutcome lo = Solve(lp);
    if (hi.status != LpStatus::kOptimal || lo.status != LpStatus::kOptimal ||
        hi.value != lo.value) {
      return false;
    }
  }
  return true;
}

std::size_t Covering::NumProfiles() const {
  std::size_t total = 1;
  for (const auto& s : sets) total *= s.size();
  return total;
}

std::size_t Covering::Encode(const Profile& x) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    index = index * sets[i].size() + static_cast<std::size_t>(x[i]);
  }
  return index;
}

Profile Covering::Decode(std::size_t index) const {
  Profile x(sets.size());
  for (std::size_t i = sets.size(); i-- > 0;) {
    x[i] = static_cast<int>(index % sets[i].size());
    index /= sets[i].size();
  }
  return x;
}

std::vector<std::string> ValidateCovering(const Game& game, const Covering& c) {
  std::vector<std::string> out;
  if (static_cast<int>(c.sets.size()) != game.NumPlayers()) {
    out.push_back("covering does not list every player");
    return out;
  }
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::set<int> seen;
    for (const auto& subset : c.sets[i]) {
      if (subset.empty()) out.push_back("empty subset for player " + game.Players()[i]);
      for (int a : subset) {
        if (a < 0 || a >= game.NumActions(i)) {
          out.push_back("unknown action in covering of player " + game.Players()[i]);
        } else {
          seen.insert(a);
        }
      }
    }
    if (static_cast<int>(seen.size()) != game.NumActions(i)) {
      out.push_back("subsets of player " + game.Players()[i] + " do not cover A_i");
    }
  }
  return out;
}

Covering TrivialCovering(const Game& game) {
  Covering c;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::vector<int> all(game.NumActions(i));
    for (int a = 0; a < game.NumActions(i); ++a) all[a] = a;
    c.sets.push_back({all});
  }
  return c;
}

Covering SingletonCovering(const Game& game) {
  Covering c;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    std::vector<std::vector<int>> own;
    for (int a = 0; a < game.NumActions(i); ++a) own.push_back({a});
    c.sets.push_back(own);
  }
  return c;
}

Covering MonotoneCovering(const Game& game) {
  RequireBinary(game);
  Covering c;
  for (int i = 0; i < game.NumPlayers(); ++i) c.sets.push_back({{0, 1}, {1}});
  return c;
}

GeneralizedPotential FromPotential(const Game& game, const PotentialFunction& v) {
  GeneralizedPotential f;
  f.covering = SingletonCovering(game);
  f.states = v.states;
  for (std::size_t k = 0; k < v.states.size(); ++k) {
    std::vector<Rational> row(f.covering.NumProfiles());
    for (std::size_t x = 0; x < row.size(); ++x) {
      row[x] = v.v[k][game.Encode(f.covering.Decode(x))];
    }
    f.f.push_back(std::move(row));
  }
  return f;
}

GeneralizedPotential FromMonotonePotential(const Game& game,
                                           const PotentialFunction& v) {
  GeneralizedPotential f;
  f.covering = MonotoneCovering(game);
  f.states = v.states;
  for (std::size_t k = 0; k < v.states.size(); ++k) {
    std::vector<Rational> row(f.covering.NumProfiles());
    for (std::size_t x = 0; x < row.size(); ++x) {
      Profile xs = f.covering.Decode(x);
      Profile a(game.NumPlayers());
      for (int i = 0; i < game.NumPlayers(); ++i) {
        a[i] = f.covering.sets[i][xs[i]].front();
      }
      row[x] = v.v[k][game.Encode(a)];
    }
    f.f.push_back(std::move(row));
  }
  return f;
}

namespace {

// Opponent atoms (a with a_i = 0, x with x_i = subset, state) for player i.
std::vector<BeliefAtom> BeliefAtoms(const Game& game,
                                    const GeneralizedPotential& f, int player,
                                    int subset) {
  std::vector<BeliefAtom> atoms;
  const Covering& c = f.covering;
  for (std::size_t xi = 0; xi < c.NumProfiles(); ++xi) {
    Profile x = c.Decode(xi);
    if (x[player] != subset) continue;
    for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
      if (game.ActionOf(a, player) != 0) continue;
      bool inside = true;
      for (int j = 0; j < game.NumPlayers() && inside; ++j) {
        if (j == player) continue;
        const auto& set = c.sets[j][x[j]];
        inside = std::find(set.begin(), set.end(), game.ActionOf(a, j)) != set.end();
      }
      if (!inside) continue;
      for (std::size_t s = 0; s < f.states.size(); ++s) {
        atoms.push_back({a, x, static_cast<int>(s), 0});
      }
    }
  }
  return atoms;
}

Rational AtomF(const GeneralizedPotential& f, const BeliefAtom& atom,
               int player, int subset) {
  Profile x = atom.x;
  x[player] = subset;
  return f.f[atom.state][f.covering.Encode(x)];
}

Rational AtomU(const Game& game, const GeneralizedPotential& f,
               const BeliefAtom& atom, int player, int action) {
  return game.Payoff(player, game.WithAction(atom.a, player, action),
                     f.states[atom.state][player]);
}

}  // namespace

GpVerdict VerifyGeneralizedPotential(const Game& game,
                                     const GeneralizedPotential& f) {
  auto problems = ValidateCovering(game, f.covering);
  if (!problems.empty()) throw BibceError(problems.front());
  GpVerdict verdict;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    for (int k = 0; k < f.covering.Size(i); ++k) {
      const std::vector<int>& own = f.covering.sets[i][k];
      std::vector<BeliefAtom> atoms = BeliefAtoms(game, f, i, k);
      for (int star = 0; star < game.NumActions(i); ++star) {
        if (std::find(own.begin(), own.end(), star) != own.end()) continue;
        LinearProgram lp;
        LinearTerm total;
        for (std::size_t m = 0; m < atoms.size(); ++m) {
          int col = lp.AddVariable("p" + std::to_string(m));
          total.emplace_back(col, 1);
        }
        int slack = lp.AddVariable("s", true);
        lp.AddConstraint(total, Relation::kEq, 1, "simplex");
        for (int other = 0; other < f.covering.Size(i); ++other) {
          if (other == k) continue;
          LinearTerm row;
          for (std::size_t m = 0; m < atoms.size(); ++m) {
            Rational d = AtomF(f, atoms[m], i, k) - AtomF(f, atoms[m], i, other);
            if (d != 0) row.emplace_back(static_cast<int>(m), d);
          }
          lp.AddConstraint(row, Relation::kGe, 0, "argmax" + std::to_string(other));
        }
        for (int ai : own) {
          LinearTerm row;
          for (std::size_t m = 0; m < atoms.size(); ++m) {
            Rational d = AtomU(game, f, atoms[m], i, star) -
                         AtomU(game, f, atoms[m], i, ai);
            if (d != 0) row.emplace_back(static_cast<int>(m), d);
          }
          row.emplace_back(slack, -1);
          lp.AddConstraint(row, Relation::kGe, 0, "beats" + std::to_string(ai));
        }
        lp.SetObjective({{{slack, 1}}, Sense::kMaximize});
        LpOutcome sol = Solve(lp);
        if (sol.status == LpStatus::kOptimal && sol.value > 0) {
          verdict.certified = false;
          verdict.player = i;
          verdict.subset = k;
          verdict.better_action = star;
          verdict.slack = sol.value;
          for (std::size_t m = 0; m < atoms.size(); ++m) {
            if (sol.point[m] != 0) {
              BeliefAtom atom = atoms[m];
              atom.p = sol.point[m];
              verdict.belief.push_back(atom);
            }
          }
          return verdict;
        }
      }
    }
  }
  return verdict;
}

bool CheckGpCounterexample(const Game& game, const GeneralizedPotential& f,
                           const GpVerdict& verdict) {
  if (verdict.certified) return false;
  const int i = verdict.player;
  const int k = verdict.subset;
  const std::vector<int>& own = f.covering.sets[i][k];
  if (std::find(own.begin(), own.end(), verdict.better_action) != own.end()) {
    return false;
  }
  Rational total = 0;
  std::vector<Rational> f_value(f.covering.Size(i));
  std::vector<Rational> u_value(game.NumActions(i));
  for (const BeliefAtom& atom : verdict.belief) {
    if (atom.p < 0 || atom.x[i] != k || game.ActionOf(atom.a, i) != 0) return false;
    for (int j = 0; j < game.NumPlayers(); ++j) {
      if (j == i) continue;
      const auto& set = f.covering.sets[j][atom.x[j]];
      if (std::find(set.begin(), set.end(), game.ActionOf(atom.a, j)) == set.end()) {
        return false;
      }
    }
    total += atom.p;
    for (int other = 0; other < f.covering.Size(i); ++other) {
      f_value[other] += atom.p * AtomF(f, atom, i, other);
    }
    for (int b = 0; b < game.NumActions(i); ++b) {
      u_value[b] += atom.p * AtomU(game, f, atom, i, b);
    }
  }
  if (total != 1) return false;
  for (int other = 0; other < f.covering.Size(i); ++other) {
    if (f_value[other] > f_value[k]) return false;
  }
  for (int ai : own) {
    if (u_value[verdict.better_action] <= u_value[ai]) return false;
  }
  return true;
}

MonotonePotential FindMonotonePotential(const Game& game,
                                        bool require_supermodular_v) {
  RequireBinary(game);
  MonotonePotential out;
  const int n = game.NumPlayers();
  const std::size_t profiles = game.NumActionProfiles();
  const ActionIndex ones = AllOnes(game);
  std::vector<Profile> states = SupportStates(game);
  LinearProgram lp;
  std::vector<std::vector<int>> v_col(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (ActionIndex a = 0; a < profiles; ++a) {
      v_col[s].push_back(lp.AddVariable(
          "v" + std::to_string(s) + "_" + std::to_string(a), true));
    }
  }
  std::vector<int> lambda_col;
  for (int i = 0; i < n; ++i) {
    lambda_col.push_back(lp.AddVariable("lambda" + std::to_string(i)));
    lp.AddConstraint({{lambda_col[i], 1}}, Relation::kGe, 1);
  }
  int slack = lp.AddVariable("s", true);
  lp.AddConstraint({{slack, 1}}, Relation::kLe, 1);
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      for (ActionIndex a = 0; a < profiles; ++a) {
        if (game.ActionOf(a, i) != 0) continue;
        ActionIndex up = game.WithAction(a, i, 1);
        Rational du = game.Payoff(i, up, states[s][i]) -
                      game.Payoff(i, a, states[s][i]);
        LinearTerm row{{v_col[s][up], -1}, {v_col[s][a], 1}};
        if (du != 0) row.emplace_back(lambda_col[i], du);
        lp.AddConstraint(row, Relation::kGe, 0, "mp");
      }
    }
    for (ActionIndex a = 0; a < profiles; ++a) {
      if (a == ones) continue;
      lp.AddConstraint({{v_col[s][ones], 1}, {v_col[s][a], -1}, {slack, -1}},
                       Relation::kGe, 0, "g2");
    }
    if (require_supermodular_v) {
      for (ActionIndex a = 0; a < profiles; ++a) {
        for (ActionIndex b = a + 1; b < profiles; ++b) {
          Profile join(n), meet(n);
          bool comparable_ab = true, comparable_ba = true;
          for (int i = 0; i < n; ++i) {
            int x = game.ActionOf(a, i), y = game.ActionOf(b, i);
            join[i] = std::max(x, y);
            meet[i] = std::min(x, y);
            if (x < y) comparable_ab = false;
            if (y < x) comparable_ba = false;
          }
          if (comparable_ab || comparable_ba) continue;
          lp.AddConstraint({{v_col[s][game.Encode(join)], 1},
                            {v_col[s][game.Encode(meet)], 1},
                            {v_col[s][a], -1},
                            {v_col[s][b], -1}},
                           Relation::kGe, 0, "smv");
        }
      }
    }
  }
  lp.SetObjective({{{slack, 1}}, Sense::kMaximize});
  LpOutcome first = Solve(lp);
  if (first.status != LpStatus::kOptimal || first.value <= 0) return out;
  LinearTerm lambda_sum;
  for (int col : lambda_col) lambda_sum.emplace_back(col, 1);
  LpOutcome second = MaximizeThenRestrict(lp, {lambda_sum, Sense::kMinimize});
  if (second.status != LpStatus::kOptimal) {
    throw BibceError("monotone potential second stage failed");
  }
  Rational scale = second.point[lambda_col[0]];
  for (int col : lambda_col) scale = std::min(scale, second.point[col]);
  out.feasible = true;
  out.v.states = states;
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<Rational> row(profiles);
    for (ActionIndex a = 0; a < profiles; ++a) {
      row[a] = second.point[v_col[s][a]] / scale;
    }
    out.v.v.push_back(std::move(row));
  }
  for (int col : lambda_col) out.lambda.push_back(second.point[col] / scale);
  out.slack = second.point[slack] / scale;
  return out;
}

namespace {

struct GpVar {
  RuleKey key;
  std::size_t x;
  int col;
};

struct GpRows {
  std::vector<GpVar> vars;
  LinearTerm objective;
};

// gamma(a, X, t, theta) >= 0 with a in X, prior rows and belief invariance
// in the pair (a_i, X_i).
GpRows AddGpRows(const Game& game, const GeneralizedPotential& f,
                 LinearProgram& lp, const std::string& prefix) {
  auto problems = ValidateCovering(game, f.covering);
  if (!problems.empty()) throw BibceError(problems.front());
  const int n = game.NumPlayers();
  const Covering& cov = f.covering;
  GpRows rows;
  std::vector<std::vector<Rational>> type_mass(n);
  for (int i = 0; i < n; ++i) type_mass[i].assign(game.NumTypes(i), Rational(0));
  for (const auto& [cell, mass] : game.Prior()) {
    for (int i = 0; i < n; ++i) type_mass[i][cell.types[i]] += mass;
  }
  int cell_id = 0;
  std::map<std::tuple<int, int, int, int>, int> w_col;  // (i, t, a_i, X_i)
  for (const auto& [cell, mass] : game.Prior()) {
    int state = FindStateIndex(f.states, cell.states);
    if (state < 0) throw BibceError("generalized potential misses a support state");
    LinearTerm prior_row;
    std::vector<std::map<std::pair<int, int>, LinearTerm>> bi(n);
    for (std::size_t x = 0; x < cov.NumProfiles(); ++x) {
      Profile xs = cov.Decode(x);
      for (ActionIndex a = 0; a < game.NumActionProfiles(); ++a) {
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
          const auto& set = cov.sets[i][xs[i]];
          inside = std::find(set.begin(), set.end(), game.ActionOf(a, i)) != set.end();
        }
        if (!inside) continue;
        int col = lp.AddVariable(prefix + "g" + std::to_string(cell_id) + "_" +
                                 std::to_string(x) + "_" + std::to_string(a));
        rows.vars.push_back({{cell, a}, x, col});
        prior_row.emplace_back(col, 1);
        if (f.f[state][x] != 0) rows.objective.emplace_back(col, f.f[state][x]);
        for (int i = 0; i < n; ++i) {
          bi[i][{game.ActionOf(a, i), xs[i]}].emplace_back(col, 1);
        }
      }
    }
    lp.AddConstraint(prior_row, Relation::kEq, mass, prefix + "prior");
    for (int i = 0; i < n; ++i) {
      const int t = cell.types[i];
      const Rational ratio = mass / type_mass[i][t];
      for (auto& [pair, row] : bi[i]) {
        auto key = std::make_tuple(i, t, pair.first, pair.second);
        auto it = w_col.find(key);
        if (it == w_col.end()) {
          it = w_col.emplace(key, lp.AddVariable(prefix + "w")).first;
        }
        row.emplace_back(it->second, -ratio);
        lp.AddConstraint(row, Relation::kEq, 0, prefix + "bi");
      }
    }
    ++cell_id;
  }
  return rows;
}

// Obedience conditional on (t_i, X_i) and the realized a_i.
void AddGpObedience(const Game& game, const GeneralizedPotential& f,
                    const GpRows& rows, LinearProgram& lp,
                    const std::string& prefix) {
  std::map<std::tuple<int, int, int, int, int>, LinearTerm> obedience;
  for (const GpVar& var : rows.vars) {
    Profile xs = f.covering.Decode(var.x);
    for (int i = 0; i < game.NumPlayers(); ++i) {
      const int ai = game.ActionOf(var.key.action, i);
      const int s = var.key.cell.states[i];
      for (int dev = 0; dev < game.NumActions(i); ++dev) {
        if (dev == ai) continue;
        Rational gain = game.Payoff(i, var.key.action, s) -
                        game.Payoff(i, game.WithAction(var.key.action, i, dev), s);
        if (gain == 0) continue;
        obedience[{i, var.key.cell.types[i], xs[i], ai, dev}].emplace_back(var.col, gain);
      }
    }
  }
  for (auto& [key, row] : obedience) lp.AddConstraint(row, Relation::kGe, 0, prefix + "ob");
}

Rational GpOptimum(const Game& game, const GeneralizedPotential& f) {
  LinearProgram lp;
  GpRows rows = AddGpRows(game, f, lp, "");
  lp.SetObjective({rows.objective, Sense::kMaximize});
  LpOutcome first = Solve(lp);
  if (first.status != LpStatus::kOptimal) {
    throw TheoryViolation("no belief-invariant A-decision rule maximizes F");
  }
  return first.value;
}

}  // namespace

GpFace AddGpFace(const Game& game, const GeneralizedPotential& f,
                 LinearProgram& lp, const std::string& prefix) {
  GpFace face;
  face.value = GpOptimum(game, f);
  GpRows rows = AddGpRows(game, f, lp, prefix);
  lp.AddConstraint(rows.objective, Relation::kEq, face.value, prefix + "pin");
  AddGpObedience(game, f, rows, lp, prefix);
  for (const GpVar& var : rows.vars) {
    face.projection[var.key].emplace_back(var.col, 1);
    face.gamma.emplace_back(std::make_pair(var.key, var.x), var.col);
  }
  return face;
}

GpMaximum GpMaximizingBibce(const Game& game, const GeneralizedPotential& f) {
  LinearProgram lp;
  GpFace face = AddGpFace(game, f, lp, "");
  LpOutcome sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw TheoryViolation("no obedient point on the F-maximizing face");
  }
  GpMaximum out;
  out.value = face.value;
  for (const auto& [key, col] : face.gamma) {
    const Rational& g = sol.point[col];
    if (g == 0) continue;
    out.gamma.mass[key] = g;
    out.rule.mass[key.first] += g;
  }
  auto violations = CheckBibce(game, out.rule);
  if (!violations.empty()) {
    throw TheoryViolation("projected A-decision rule is not a BIBCE: " +
                          violations.front());
  }
  return out;
}

}  // namespace bibce
