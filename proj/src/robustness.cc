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

#include "bibce/robustness.h"

#include <chrono>
#include <future>
#include <sstream>

#include "bibce/io.h"
#include "bibce/supermodular.h"

namespace bibce {
namespace {

struct AtomTerms {
  LinearTerm p;
  LinearTerm q;
};

int SubsetOf(const Covering& c, int player, int action) {
  for (int k = 0; k < c.Size(player); ++k) {
    const auto& s = c.sets[player][k];
    if (std::find(s.begin(), s.end(), action) != s.end()) return k;
  }
  return -1;
}

std::string Cells(const Game& g, const DistributionalRule& rule) {
  std::ostringstream out;
  for (const auto& [key, mass] : rule.mass) {
    out << "  " << g.ProfileName(key.action) << " at";
    for (int i = 0; i < g.NumPlayers(); ++i) {
      out << ' ' << (key.cell.states[i] == kOffSupport ? "off" : g.States(i)[key.cell.states[i]]);
    }
    out << ": " << ToString(mass) << '\n';
  }
  std::string text = out.str();
  if (!text.empty()) text.pop_back();
  return text;
}

}  // namespace

DistanceResult MinDistanceToSet(const ElaborationWitness& w, const GeneralizedPotential& f) {
  LinearProgram lp;
  RuleBlock perturbed = AddRuleBlock(w.perturbed, lp, RuleOptions{}, "p");
  GpFace face = AddGpFace(w.base, f, lp, "q");

  std::map<RuleKey, AtomTerms> atoms;
  for (std::size_t k = 0; k < perturbed.keys.size(); ++k) {
    const RuleKey& key = perturbed.keys[k];
    atoms[{MapCell(key.cell, w.tau, w.phi), key.action}].p.emplace_back(perturbed.index[k], 1);
  }
  for (const auto& [key, term] : face.projection) {
    auto& q = atoms[key].q;
    q.insert(q.end(), term.begin(), term.end());
  }

  const int d = lp.AddVariable("d");
  LinearTerm pos_sum{{d, 1}}, neg_sum{{d, 1}};
  for (const auto& [key, terms] : atoms) {
    const int pos = lp.AddVariable("pos");
    const int neg = lp.AddVariable("neg");
    LinearTerm row = terms.p;
    for (const auto& [col, c] : terms.q) row.emplace_back(col, -c);
    row.emplace_back(pos, -1);
    row.emplace_back(neg, 1);
    lp.AddConstraint(row, Relation::kEq, 0, "split");
    pos_sum.emplace_back(pos, -1);
    neg_sum.emplace_back(neg, -1);
  }
  lp.AddConstraint(pos_sum, Relation::kGe, 0, "positive part");
  lp.AddConstraint(neg_sum, Relation::kGe, 0, "negative part");
  lp.SetObjective({{{d, 1}}, Sense::kMinimize});

  LpOutcome sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw TheoryViolation("perturbed BIBCE set or target face is empty");
  }
  DistanceResult out;
  out.distance = sol.value;
  out.perturbed_rule = ExtractRule(perturbed, sol.point);
  for (const auto& [key, term] : face.projection) {
    Rational z = Evaluate(term, sol.point);
    if (z != 0) out.target_rule.mass[key] = z;
  }

  auto bad = CheckBibce(w.perturbed, out.perturbed_rule);
  if (!bad.empty()) throw TheoryViolation("perturbed rule is not a BIBCE: " + bad.front());
  bad = CheckBibce(w.base, out.target_rule);
  if (!bad.empty()) throw TheoryViolation("target rule is not a BIBCE: " + bad.front());
  DistributionalRule pushed = Pushforward(out.perturbed_rule, w.tau, w.phi);
  if (SupEventDistance(ToMeasure(pushed), ToMeasure(out.target_rule)) != out.distance) {
    throw TheoryViolation("distance LP disagrees with the direct sup-event distance");
  }
  out.value_gap = face.value - RuleFValue(w.base, f, pushed);
  return out;
}

Rational RuleFValue(const Game& g, const GeneralizedPotential& f,
                    const DistributionalRule& rule) {
  Rational total = 0;
  for (const auto& [key, mass] : rule.mass) {
    if (std::find(key.cell.states.begin(), key.cell.states.end(), kOffSupport) !=
        key.cell.states.end()) {
      continue;
    }
    auto it = std::lower_bound(f.states.begin(), f.states.end(), key.cell.states);
    if (it == f.states.end() || *it != key.cell.states) continue;
    Profile x(g.NumPlayers());
    for (int i = 0; i < g.NumPlayers(); ++i) {
      x[i] = SubsetOf(f.covering, i, g.ActionOf(key.action, i));
    }
    total += mass * f.f[it - f.states.begin()][f.covering.Encode(x)];
  }
  return total;
}

SweepReport RobustnessSweep(const GeneralizedPotential& f, const std::string& name,
                            const Family& family, const std::vector<Rational>& eps_list) {
  std::vector<std::future<SweepRow>> jobs;
  for (const Rational& eps : eps_list) {
    jobs.push_back(std::async(std::launch::async, [&f, &name, &family, eps] {
      auto start = std::chrono::steady_clock::now();
      ElaborationWitness w = family(eps);
      DistanceResult d = MinDistanceToSet(w, f);
      SweepRow row;
      row.family = name;
      row.epsilon = eps;
      row.certified = w.epsilon;
      row.distance = d.distance;
      row.value_gap = d.value_gap;
      row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start).count();
      return row;
    }));
  }
  SweepReport report;
  for (auto& job : jobs) report.rows.push_back(job.get());
  if (!eps_list.empty()) report.game_hash = HashGame(family(eps_list.front()).base);
  return report;
}

std::string SweepCsv(const SweepReport& report) {
  std::ostringstream out;
  out << "family,epsilon_num,epsilon_den,distance_num,distance_den,value_gap,ms\n";
  for (const SweepRow& row : report.rows) {
    out << row.family << ',' << row.epsilon.get_num().get_str() << ','
        << row.epsilon.get_den().get_str() << ',' << row.distance.get_num().get_str() << ','
        << row.distance.get_den().get_str() << ',' << ToString(row.value_gap) << ','
        << row.ms << '\n';
  }
  return out.str();
}

void Report::Check(bool condition, const std::string& what) {
  lines.push_back(std::string(condition ? "ok   " : "FAIL ") + what);
  ok = ok && condition;
}

DistributionalRule EmailLimitPushforward(const Game& base, const Rational& eps) {
  const Rational cycle = 1 - Pow(1 - eps, 4);
  auto m = [&](int r) -> Rational { return eps * Pow(1 - eps, r) / cycle; };
  const int alpha = base.FindAction(0, "alpha"), beta = base.FindAction(0, "beta");
  const int th1 = base.FindState(0, "theta1"), th2 = base.FindState(0, "theta2");
  DistributionalRule rule;
  auto put = [&](int a1, int a2, int s, const Rational& mass) {
    RuleKey key{{{0, 0}, {s, s}}, base.Encode({a1, a2})};
    if (mass != 0) rule.mass[key] += mass;
  };
  put(alpha, beta, th2, m(0) - eps);
  put(beta, beta, th1, m(1));
  put(beta, alpha, th2, m(2));
  put(alpha, alpha, th1, m(3));
  put(alpha, beta, kOffSupport, eps);
  return rule;
}

Report ReproduceMotivatingExample() {
  Report report;
  Game g = MotivatingExample();
  report.Check(ValidateGame(g).ok(), "base game is valid");

  PotentialSearch search = FindPotential(g);
  report.Check(search.feasible && CheckPotential(g, search.potential).empty(),
               "potential found and re-verified");
  if (!search.feasible) return report;
  RuleMaximum best = MaximizePotentialBibce(g, search.potential);
  const DistributionalRule table = QuarterCellsRule(g);
  report.Note("P-maximizing BIBCE:\n" + Cells(g, best.rule));
  bool quarters = best.rule.mass.size() == 4;
  for (const auto& [key, mass] : best.rule.mass) quarters = quarters && mass == MakeRational(1, 4);
  report.Check(quarters && best.rule == table, "every cell of the maximizer is 1/4");
  report.Check(FaceIsSingleton(best.face, best.block), "the maximizer is unique");
  PotentialFunction common;
  common.states = search.potential.states;
  for (const Profile& s : common.states) {
    std::vector<Rational> row;
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) row.push_back(g.Payoff(0, a, s[0]));
    common.v.push_back(row);
  }
  Rational value = 0;
  for (const auto& [key, mass] : table.mass) {
    value += mass * common.ValueAt(key.action, key.cell.states);
  }
  report.Check(value == 1, "expected common payoff of the maximizer is 1");

  // Dominance chain on the truncated email game.
  ElaborationWitness email = EmailGameFamily(MakeRational(1, 10), 12);
  SurvivorSets survivors = IteratedStrictDominance(email.perturbed);
  static const int kCycle[4][2] = {{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  bool cyclic = true;
  for (int n = 0; n < 12; ++n) {
    for (int i = 0; i < 2; ++i) {
      int t = email.perturbed.FindType(i, EmailTypeName(i, n));
      cyclic = cyclic && survivors[i][t] == std::vector<int>{kCycle[n % 4][i]};
    }
  }
  report.Check(cyclic, "email game at eps 1/10: survivors follow the mod-4 cycle");

  // The surviving profile, pushed down, is within the tail of the closed form.
  ElaborationWitness deep = EmailGameFamily(MakeRational(1, 10), 40);
  SurvivorSets deep_survivors = IteratedStrictDominance(deep.perturbed);
  PureProfile pure(2);
  for (int i = 0; i < 2; ++i) {
    for (const auto& s : deep_survivors[i]) pure[i].push_back(s.front());
  }
  DistributionalRule pushed =
      Pushforward(RuleFromPure(deep.perturbed, pure), deep.tau, deep.phi);
  Rational gap = SupEventDistance(ToMeasure(pushed),
                                  ToMeasure(EmailLimitPushforward(g, MakeRational(1, 10))));
  report.Check(gap <= deep.tail_mass, "closed-form pushforward matches depth 40 within the tail");

  Rational last = 2;
  bool decreasing = true;
  for (int den : {10, 40, 160}) {
    Rational d = SupEventDistance(ToMeasure(EmailLimitPushforward(g, MakeRational(1, den))),
                                  ToMeasure(table));
    report.Note("distance of the limit pushforward at eps 1/" + std::to_string(den) +
                " to the maximizer: " + ToString(d));
    decreasing = decreasing && d < last;
    last = d;
  }
  report.Check(decreasing, "pushforward distance decreases along eps 1/10, 1/40, 1/160");

  // BNE of the one-type base game do not depend on theta, so every BNE lies
  // in the theta-independent polytope; minimize the distance over it.
  LinearProgram lp;
  std::vector<int> q;
  LinearTerm simplex;
  for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
    q.push_back(lp.AddVariable("q"));
    simplex.emplace_back(q.back(), 1);
  }
  lp.AddConstraint(simplex, Relation::kEq, 1, "simplex");
  const int d = lp.AddVariable("d");
  LinearTerm pos_sum{{d, 1}}, neg_sum{{d, 1}};
  for (const auto& [cell, mass] : g.Prior()) {
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
      auto it = table.mass.find({cell, a});
      Rational target = it == table.mass.end() ? Rational(0) : it->second;
      int pos = lp.AddVariable("pos"), neg = lp.AddVariable("neg");
      lp.AddConstraint({{q[a], mass}, {pos, -1}, {neg, 1}}, Relation::kEq, target);
      pos_sum.emplace_back(pos, -1);
      neg_sum.emplace_back(neg, -1);
    }
  }
  lp.AddConstraint(pos_sum, Relation::kGe, 0);
  lp.AddConstraint(neg_sum, Relation::kGe, 0);
  lp.SetObjective({{{d, 1}}, Sense::kMinimize});
  LpOutcome sol = Solve(lp);
  report.Note("closest theta-independent rule: " +
              (sol.status == LpStatus::kOptimal ? ToString(sol.value) : "none"));
  report.Check(sol.status == LpStatus::kOptimal && sol.value > MakeRational(1, 8),
               "no BNE is within 1/8 of the maximizer");
  bool pure_far = true;
  auto bne = EnumeratePureBne(g);
  for (const PureProfile& p : bne) {
    pure_far = pure_far &&
               SupEventDistance(ToMeasure(RuleFromPure(g, p)), ToMeasure(table)) > MakeRational(1, 8);
  }
  report.Check(bne.size() == 4 && pure_far, "all four pure BNE are far from the maximizer");
  return report;
}

Report ReproduceGlobalGameExample(const Rational& r, const Rational& p, int depth) {
  Report report;
  const int tau = TauStar(r, p);
  GlobalGame gg = GlobalGameFamily(r, p, depth);
  const Game& g = gg.game;
  report.Note("tau* = " + std::to_string(tau));
  if (tau > depth + 1) {
    report.Check(false, "depth is too small for tau*");
    return report;
  }

  std::vector<int> thresholds;
  for (int k = 0; k <= depth + 2; ++k) {
    if (IsPureBne(g, ToPure(gg, ThresholdProfile(gg, k)))) thresholds.push_back(k);
  }
  report.Check(thresholds == std::vector<int>{0, tau, depth + 2},
               "monotone pure BNE are exactly s^0, s^tau*, s^inf");

  const TypeActions s0 = ThresholdProfile(gg, 0);
  const TypeActions star = ThresholdProfile(gg, tau);
  const TypeActions top = ThresholdProfile(gg, depth + 2);
  const Rational f0 = GlobalGameF(gg, s0), fstar = GlobalGameF(gg, star), ftop = GlobalGameF(gg, top);
  report.Note("f(s^0) = " + ToString(f0));
  report.Note("f(s^tau*) = " + ToString(fstar));
  report.Note("f(s^inf) = " + ToString(ftop));

  auto expected = [&](const TypeActions& x) {
    Rational total = 0;
    for (const auto& [key, mass] : RuleFromPure(g, ToPure(gg, x)).mass) {
      total += mass * gg.potential.ValueAt(key.action, key.cell.states);
    }
    return total;
  };
  report.Check(expected(s0) == f0 && expected(star) == fstar && expected(top) == ftop,
               "f-values agree with the expected potential");
  const Rational q = (1 - p) * r;
  const Rational closed = 1 - Pow(1 - p, depth) - p * r * (1 - Pow(q, depth)) / (1 - q) +
                          Pow(1 - p, depth) * (1 - Pow(r, depth + 1));
  report.Check(closed == f0, "f(s^0) matches its geometric closed form");
  report.Check(fstar > f0 && fstar > ftop, "f(s^tau*) exceeds f(s^0) and f(s^inf)");

  // Obedience of s^tau* around the threshold.
  PureProfile pure = ToPure(gg, star);
  bool obeys = true;
  for (int k = std::max(0, tau - 1); k <= std::min(depth + 1, tau + 1); ++k) {
    const int i = k % 2, t = k / 2;
    const int played = pure[i][t];
    Rational gain = InterimPayoff(g, pure, i, t, played) - InterimPayoff(g, pure, i, t, 1 - played);
    report.Note("type " + std::to_string(k) + " plays " + std::to_string(played) +
                ", interim margin " + ToString(gain));
    obeys = obeys && gain >= 0;
  }
  report.Check(obeys, "types tau*-1, tau*, tau*+1 best-respond under s^tau*");

  RuleMaximum best = MaximizePotentialBibce(g, gg.potential);
  auto [hi, lo] = ExtremalSelections(g, best.rule);
  report.Check(FromPureProfile(gg, hi) == star && FromPureProfile(gg, lo) == star,
               "extremal selections of the P-maximizing BIBCE equal s^tau*");
  report.Check(best.value == fstar, "maximum expected potential equals f(s^tau*)");
  return report;
}

}  // namespace bibce
