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

#include "bibce/elaborations.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace bibce {
namespace {

struct Distances {
  Rational prior;
  std::vector<std::vector<Rational>> belief;  // -1 for types without mass
  std::vector<std::vector<Rational>> type_mass;
};

Atom DropPlayer(const Cell& cell, int i) {
  Atom atom;
  for (std::size_t j = 0; j < cell.types.size(); ++j) {
    if (static_cast<int>(j) != i) atom.push_back(cell.types[j]);
  }
  atom.insert(atom.end(), cell.states.begin(), cell.states.end());
  return atom;
}

Atom Flatten(const Cell& cell) {
  Atom atom = cell.types;
  atom.insert(atom.end(), cell.states.begin(), cell.states.end());
  return atom;
}

// Prior and belief distances with perturbed states matched to base states
// by name. Cells on unmatched states are dropped.
Distances ComputeDistances(const Game& base, const Game& perturbed,
                           const TypeMap& tau) {
  const int n = base.NumPlayers();
  if (perturbed.NumPlayers() != n || static_cast<int>(tau.map.size()) != n) {
    throw BibceError("player sets differ");
  }
  StateMap phi = StateMapByName(perturbed, base);
  Distances out;
  out.type_mass.resize(n);
  for (int i = 0; i < n; ++i) {
    out.type_mass[i].assign(perturbed.NumTypes(i), Rational(0));
  }
  for (const auto& [cell, mass] : perturbed.Prior()) {
    for (int i = 0; i < n; ++i) out.type_mass[i][cell.types[i]] += mass;
  }

  FiniteMeasure pushed, original;
  // Conditional measures per perturbed type, unnormalized.
  std::vector<std::vector<FiniteMeasure>> cond(n);
  for (int i = 0; i < n; ++i) cond[i].resize(perturbed.NumTypes(i));
  for (const auto& [cell, mass] : perturbed.Prior()) {
    Cell mapped;
    bool matched = true;
    for (int i = 0; i < n; ++i) {
      int t = tau.map[i][cell.types[i]];
      if (t < 0) throw BibceError("type map is not total on the perturbed support");
      mapped.types.push_back(t);
      int s = phi.map[i][cell.states[i]];
      if (s == kOffSupport) matched = false;
      mapped.states.push_back(s);
    }
    if (!matched) continue;
    pushed[Flatten(mapped)] += mass;
    for (int i = 0; i < n; ++i) {
      cond[i][cell.types[i]][DropPlayer(mapped, i)] += mass;
    }
  }
  for (const auto& [cell, mass] : base.Prior()) original[Flatten(cell)] += mass;
  out.prior = SupEventDistance(pushed, original);

  out.belief.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<FiniteMeasure> base_cond(base.NumTypes(i));
    std::vector<Rational> base_mass(base.NumTypes(i));
    for (const auto& [cell, mass] : base.Prior()) {
      base_cond[cell.types[i]][DropPlayer(cell, i)] += mass;
      base_mass[cell.types[i]] += mass;
    }
    out.belief[i].assign(perturbed.NumTypes(i), Rational(-1));
    for (int t = 0; t < perturbed.NumTypes(i); ++t) {
      const Rational& m = out.type_mass[i][t];
      if (m == 0) continue;
      const int bt = tau.map[i][t];
      if (base_mass[bt] == 0) throw BibceError("type map leaves T*");
      FiniteMeasure mine = cond[i][t];
      for (auto& [atom, x] : mine) x /= m;
      FiniteMeasure theirs = base_cond[bt];
      for (auto& [atom, x] : theirs) x /= base_mass[bt];
      out.belief[i][t] = SupEventDistance(mine, theirs);
    }
  }
  return out;
}

Rational FlatMass(const std::vector<Rational>& distance,
                  const std::vector<Rational>& mass, const Rational& level) {
  Rational total = 0;
  for (std::size_t t = 0; t < distance.size(); ++t) {
    if (mass[t] > 0 && distance[t] <= level) total += mass[t];
  }
  return total;
}

}  // namespace

bool VerifyElaboration(const Game& base, const Game& perturbed,
                       const TypeMap& tau) {
  Distances d = ComputeDistances(base, perturbed, tau);
  if (d.prior != 0) return false;
  for (const auto& row : d.belief) {
    for (const Rational& x : row) {
      if (x > 0) return false;
    }
  }
  return true;
}

EpsilonCertificate EpsilonOf(const Game& base, const Game& perturbed,
                             const TypeMap& tau) {
  const int n = base.NumPlayers();
  if (perturbed.NumPlayers() != n) throw BibceError("not an elaboration candidate");
  SupportSets support = ComputeSupport(base);
  std::vector<std::set<std::string>> star_names(n);
  for (int i = 0; i < n; ++i) {
    if (perturbed.Actions(i) != base.Actions(i)) {
      throw BibceError("not an elaboration candidate");
    }
    for (int s : support.states[i]) {
      const std::string& name = base.States(i)[s];
      int ps = perturbed.FindState(i, name);
      if (ps < 0) throw BibceError("not an elaboration candidate");
      for (ActionIndex a = 0; a < base.NumActionProfiles(); ++a) {
        if (perturbed.Payoff(i, a, ps) != base.Payoff(i, a, s)) {
          throw BibceError("not an elaboration candidate");
        }
      }
      star_names[i].insert(name);
    }
  }

  EpsilonCertificate cert;
  cert.sharp.resize(n);
  std::vector<std::vector<bool>> sharp(n);
  for (int i = 0; i < n; ++i) sharp[i].assign(perturbed.NumTypes(i), true);
  for (const auto& [cell, mass] : perturbed.Prior()) {
    for (int i = 0; i < n; ++i) {
      if (!star_names[i].count(perturbed.States(i)[cell.states[i]])) {
        sharp[i][cell.types[i]] = false;
      }
    }
  }
  for (const auto& [cell, mass] : perturbed.Prior()) {
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) inside = sharp[i][cell.types[i]];
    if (inside) cert.sharp_mass += mass;
  }
  cert.payoff_level = 1 - cert.sharp_mass;

  Distances d = ComputeDistances(base, perturbed, tau);
  cert.prior_distance = d.prior;
  cert.distance = d.belief;
  cert.type_mass = d.type_mass;
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < perturbed.NumTypes(i); ++t) {
      if (d.type_mass[i][t] > 0 && sharp[i][t]) cert.sharp[i].push_back(t);
    }
  }

  cert.epsilon = std::max(cert.payoff_level, cert.prior_distance);
  for (int i = 0; i < n; ++i) {
    Rational best = 1;
    for (int t = 0; t < perturbed.NumTypes(i); ++t) {
      if (d.type_mass[i][t] == 0) continue;
      const Rational& c = d.belief[i][t];
      Rational level = std::max(c, Rational(1 - FlatMass(d.belief[i], d.type_mass[i], c)));
      best = std::min(best, level);
    }
    cert.belief_level.push_back(best);
    cert.epsilon = std::max(cert.epsilon, best);
  }
  cert.flats.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < perturbed.NumTypes(i); ++t) {
      if (d.type_mass[i][t] > 0 && d.belief[i][t] <= cert.epsilon) {
        cert.flats[i].push_back(t);
      }
    }
  }
  return cert;
}

bool SatisfiesEpsilon(const EpsilonCertificate& cert, const Rational& epsilon) {
  if (cert.payoff_level > epsilon || cert.prior_distance > epsilon) return false;
  for (std::size_t i = 0; i < cert.distance.size(); ++i) {
    if (FlatMass(cert.distance[i], cert.type_mass[i], epsilon) < 1 - epsilon) {
      return false;
    }
  }
  return true;
}

namespace {

void SetMatchingPayoffs(Game& g, int theta1, int theta2) {
  for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
    const bool same = g.ActionOf(a, 0) == g.ActionOf(a, 1);
    for (int i = 0; i < 2; ++i) {
      g.SetPayoff(i, a, theta1, same ? 1 : 0);
      g.SetPayoff(i, a, theta2, same ? 0 : 1);
    }
  }
}

}  // namespace

Game MotivatingExample() {
  Game g({"1", "2"}, {{"alpha", "beta"}, {"alpha", "beta"}}, {{"t"}, {"t"}},
         {{"theta1", "theta2"}, {"theta1", "theta2"}});
  SetMatchingPayoffs(g, 0, 1);
  g.AddPrior({{0, 0}, {0, 0}}, MakeRational(1, 2));
  g.AddPrior({{0, 0}, {1, 1}}, MakeRational(1, 2));
  return g;
}

namespace {

// u_1 = 1 iff player 1 plays alpha; u_2 = 1 iff the actions differ.
void SetTheta0Payoffs(Game& g, int theta0) {
  for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
    g.SetPayoff(0, a, theta0, g.ActionOf(a, 0) == 0 ? 1 : 0);
    g.SetPayoff(1, a, theta0, g.ActionOf(a, 0) != g.ActionOf(a, 1) ? 1 : 0);
  }
}

}  // namespace

Game MotivatingExampleWithTheta0() {
  Game g({"1", "2"}, {{"alpha", "beta"}, {"alpha", "beta"}}, {{"t"}, {"t"}},
         {{"theta0", "theta1", "theta2"}, {"theta0", "theta1", "theta2"}});
  SetMatchingPayoffs(g, 1, 2);
  SetTheta0Payoffs(g, 0);
  g.AddPrior({{0, 0}, {1, 1}}, MakeRational(1, 2));
  g.AddPrior({{0, 0}, {2, 2}}, MakeRational(1, 2));
  return g;
}

DistributionalRule QuarterCellsRule(const Game& base) {
  DistributionalRule rule;
  const int theta1 = base.FindState(0, "theta1");
  const int theta2 = base.FindState(0, "theta2");
  const Rational quarter = MakeRational(1, 4);
  for (ActionIndex a = 0; a < base.NumActionProfiles(); ++a) {
    const bool same = base.ActionOf(a, 0) == base.ActionOf(a, 1);
    const int s = same ? theta1 : theta2;
    rule.mass[{{{0, 0}, {s, s}}, a}] = quarter;
  }
  return rule;
}

std::string EmailTypeName(int player, int n) {
  if (player == 0) {
    if (n == 0) return "{0}";
    int k = (n + 1) / 2;
    return "{" + std::to_string(2 * k - 1) + "," + std::to_string(2 * k) + "}";
  }
  int k = n / 2;
  return "{" + std::to_string(2 * k) + "," + std::to_string(2 * k + 1) + "}";
}

ElaborationWitness EmailGameFamily(const Rational& eps, int depth) {
  if (eps <= 0 || eps >= 1) throw BibceError("email family needs 0 < eps < 1");
  if (depth < 2) throw BibceError("email family needs depth >= 2");
  std::vector<std::vector<std::string>> types(2);
  for (int n = 0; n < depth; ++n) {
    for (int i = 0; i < 2; ++i) {
      std::string name = EmailTypeName(i, n);
      if (types[i].empty() || types[i].back() != name) types[i].push_back(name);
    }
  }
  types[0].push_back("cap");
  types[1].push_back("cap");
  Game g({"1", "2"}, {{"alpha", "beta"}, {"alpha", "beta"}}, types,
         {{"theta0", "theta1", "theta2"}, {"theta0", "theta1", "theta2"}});
  SetMatchingPayoffs(g, 1, 2);
  SetTheta0Payoffs(g, 0);
  Rational weight = eps;
  for (int n = 0; n < depth; ++n) {
    int s = n == 0 ? 0 : (n % 2 == 1 ? 1 : 2);
    int t1 = g.FindType(0, EmailTypeName(0, n));
    int t2 = g.FindType(1, EmailTypeName(1, n));
    g.AddPrior({{t1, t2}, {s, s}}, weight);
    weight *= 1 - eps;
  }
  const Rational tail = Pow(1 - eps, depth);
  const int c1 = g.NumTypes(0) - 1;
  const int c2 = g.NumTypes(1) - 1;
  g.AddPrior({{c1, c2}, {1, 1}}, tail / 2);
  g.AddPrior({{c1, c2}, {2, 2}}, tail / 2);

  ElaborationWitness w;
  w.base = MotivatingExample();
  w.perturbed = g;
  for (int i = 0; i < 2; ++i) w.tau.map.push_back(std::vector<int>(g.NumTypes(i), 0));
  w.phi = StateMapByName(g, w.base);
  EpsilonCertificate cert = EpsilonOf(w.base, g, w.tau);
  w.epsilon = cert.epsilon;
  w.flats = cert.flats;
  w.sharp_mass = cert.sharp_mass;
  w.tail_mass = tail;
  return w;
}

GlobalGame GlobalGameFamily(const Rational& r, const Rational& p, int depth) {
  if (r <= 0 || r >= 1 || p <= 0 || p >= 1) {
    throw BibceError("global game needs 0 < r < 1 and 0 < p < 1");
  }
  if (depth < 1) throw BibceError("global game needs depth >= 1");
  std::vector<std::vector<std::string>> types(2), states(2);
  for (int k = 0; k <= depth + 1; ++k) types[k % 2].push_back(std::to_string(k));
  for (int n = 0; n <= depth; ++n) {
    states[0].push_back(std::to_string(n));
    states[1].push_back(std::to_string(n));
  }
  GlobalGame gg;
  gg.r = r;
  gg.p = p;
  gg.depth = depth;
  gg.game = Game({"1", "2"}, {{"0", "1"}, {"0", "1"}}, types, states);
  Game& g = gg.game;
  for (int n = 0; n <= depth; ++n) {
    const Rational high = Pow(r, n + 1);
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
      for (int i = 0; i < 2; ++i) {
        Rational u = 0;
        if (g.ActionOf(a, i) == 1) u = g.ActionOf(a, 1 - i) == 1 ? high : high - 1;
        g.SetPayoff(i, a, n, u);
      }
    }
    const int even = n % 2 == 0 ? n : n + 1;
    const int odd = n % 2 == 0 ? n + 1 : n;
    Rational mass = n < depth ? p * Pow(1 - p, n) : Pow(1 - p, depth);
    g.AddPrior({{even / 2, odd / 2}, {n, n}}, mass);
  }
  gg.potential.states = SupportStates(g);
  for (const Profile& s : gg.potential.states) {
    const Rational high = Pow(r, s[0] + 1);
    std::vector<Rational> v(g.NumActionProfiles());
    v[g.Encode({1, 1})] = high;
    v[g.Encode({0, 0})] = 1 - high;
    gg.potential.v.push_back(std::move(v));
  }
  return gg;
}

int TauStar(const Rational& r, const Rational& p) {
  const Rational bound = (1 - p) / (1 + r * (1 - p));
  Rational power = 1;
  for (int tau = 0; tau < 100000; ++tau) {
    if (power == bound) throw BibceError("knife-edge parameters");
    if (tau >= 2 && power < bound) return tau;
    power *= r;
  }
  throw BibceError("tau* scan did not terminate");
}

TypeActions ThresholdProfile(const GlobalGame& gg, int tau) {
  TypeActions x(gg.depth + 2);
  for (int k = 0; k <= gg.depth + 1; ++k) x[k] = k <= tau - 1 ? 1 : 0;
  return x;
}

PureProfile ToPure(const GlobalGame& gg, const TypeActions& x) {
  PureProfile pure(2);
  for (int k = 0; k <= gg.depth + 1; ++k) pure[k % 2].push_back(x[k]);
  return pure;
}

TypeActions FromPureProfile(const GlobalGame& gg, const PureProfile& pure) {
  TypeActions x(gg.depth + 2);
  for (int k = 0; k <= gg.depth + 1; ++k) x[k] = pure[k % 2][k / 2];
  return x;
}

Rational GlobalGameF(const GlobalGame& gg, const TypeActions& x) {
  Rational total = 0;
  for (int k = 0; k <= gg.depth; ++k) {
    Rational w = k < gg.depth ? gg.p * Pow(1 - gg.p, k) : Pow(1 - gg.p, gg.depth);
    Rational high = Pow(gg.r, k + 1);
    total += w * (high * x[k] * x[k + 1] + (1 - high) * (1 - x[k]) * (1 - x[k + 1]));
  }
  return total;
}

namespace {

Rational RandomFraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den_dist(2, 6);
  int den = den_dist(rng);
  std::uniform_int_distribution<int> num_dist(1, den - 1);
  return MakeRational(num_dist(rng), den);
}

}  // namespace

ElaborationWitness RandomEpsilonElaboration(const Game& base, const Rational& eps,
                                            std::uint64_t seed) {
  if (eps < 0 || eps >= 1) throw BibceError("eps must lie in [0, 1)");
  std::mt19937_64 rng(seed);
  const int n = base.NumPlayers();
  SupportSets support = ComputeSupport(base);

  // q[i][t]: probability of copy 1 for type t.
  std::vector<std::vector<Rational>> q(n);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < base.NumTypes(i); ++t) q[i].push_back(RandomFraction(rng));
  }
  CommunicationRule rho;
  rho.messages.assign(n, {"0", "1"});
  const std::size_t profiles = std::size_t{1} << n;
  std::uniform_int_distribution<int> step(-3, 3);
  for (const auto& [cell, mass] : base.Prior()) {
    std::vector<Rational> joint(profiles);
    for (std::size_t m = 0; m < profiles; ++m) {
      Rational x = 1;
      for (int i = 0; i < n; ++i) {
        const Rational& one = q[i][cell.types[i]];
        x *= (m >> i) & 1u ? one : Rational(1 - one);
      }
      joint[m] = x;
    }
    // Rectangle moves in the first two coordinates keep every marginal.
    if (n >= 2) {
      for (std::size_t rest = 0; rest < profiles; rest += 4) {
        Rational& p00 = joint[rest];
        Rational& p10 = joint[rest + 1];
        Rational& p01 = joint[rest + 2];
        Rational& p11 = joint[rest + 3];
        int k = step(rng);
        Rational delta = k >= 0 ? MakeRational(k, 4) * std::min(p01, p10)
                                : MakeRational(k, 4) * std::min(p00, p11);
        p00 += delta;
        p11 += delta;
        p01 -= delta;
        p10 -= delta;
      }
    }
    auto& row = rho.dist[cell];
    for (std::size_t m = 0; m < profiles; ++m) {
      if (joint[m] == 0) continue;
      Profile msg(n);
      for (int i = 0; i < n; ++i) msg[i] = (m >> i) & 1u;
      row[msg] = joint[m];
    }
  }
  ConjunctionResult conj = Conjunction(base, rho);

  std::vector<std::vector<std::string>> actions(n), types(n), states(n);
  for (int i = 0; i < n; ++i) {
    actions[i] = base.Actions(i);
    types[i] = conj.game.Types(i);
    states[i] = base.States(i);
    if (eps > 0) {
      types[i].push_back("crazy");
      states[i].push_back("crazy");
    }
  }
  Game g(base.Players(), actions, types, states);
  for (int i = 0; i < n; ++i) {
    for (ActionIndex a = 0; a < base.NumActionProfiles(); ++a) {
      for (int s = 0; s < base.NumStates(i); ++s) {
        g.SetPayoff(i, a, s, base.Payoff(i, a, s));
      }
      if (eps > 0) {
        g.SetPayoff(i, a, base.NumStates(i), base.ActionOf(a, i) == 0 ? 1 : 0);
      }
    }
  }
  for (const auto& [cell, mass] : conj.game.Prior()) g.AddPrior(cell, mass * (1 - eps));
  ElaborationWitness w;
  w.base = base;
  w.tau = conj.projection;
  w.phi = StateMapByName(g, base);
  if (eps > 0) {
    Cell crazy;
    for (int i = 0; i < n; ++i) {
      crazy.types.push_back(g.NumTypes(i) - 1);
      crazy.states.push_back(g.NumStates(i) - 1);
      w.tau.map[i].push_back(*support.types[i].begin());
      w.phi.map[i].back() = *support.states[i].begin();
    }
    g.AddPrior(crazy, eps);
  }
  w.perturbed = g;
  EpsilonCertificate cert = EpsilonOf(base, g, w.tau);
  w.epsilon = cert.epsilon;
  w.flats = cert.flats;
  w.sharp_mass = cert.sharp_mass;
  return w;
}

}  // namespace bibce
