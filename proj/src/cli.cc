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

#include "bibce/cli.h"

#include <algorithm>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"

#include "bibce/io.h"
#include "bibce/robustness.h"
#include "bibce/supermodular.h"

namespace bibce {
namespace {

// A subcommand failed one of its own checks.
class AssertionFailure : public BibceError {
 public:
  explicit AssertionFailure(const std::string& what) : BibceError(what) {}
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string output;  // empty: stdout
  int verbosity = 0;

  void Emit(const Json& value) const {
    if (output.empty()) {
      out << value.dump(2) << '\n';
    } else {
      WriteText(output, value.dump(2) + "\n");
    }
  }
};

Game LoadGame(const std::string& path) {
  GameDocument doc = GameFromDocument(LoadDocument(path));
  if (!doc.violations.empty()) {
    std::string all;
    for (const auto& v : doc.violations) all += (all.empty() ? "" : "\n") + v;
    throw DocumentError(all);
  }
  return doc.game;
}

Rational ParseArg(const std::string& text, const std::string& flag) {
  try {
    return ParseRational(text);
  } catch (const BibceError&) {
    throw DocumentError("--" + flag + ": not a rational: '" + text + "'");
  }
}

GeneralizedPotential LoadF(const Game& g, const std::string& path,
                           const std::string& covering_path) {
  Document doc = LoadDocument(path);
  if (doc.value.is_object() && doc.value.contains("potential")) {
    return FromPotential(g, PotentialFromDocument(g, doc));
  }
  Covering c = covering_path.empty() ? SingletonCovering(g)
                                     : CoveringFromDocument(g, LoadDocument(covering_path));
  return GpFromDocument(g, c, doc);
}

Json ProfileJson(const Game& g, ActionIndex a) {
  Json names = Json::array();
  Profile p = g.Decode(a);
  for (int i = 0; i < g.NumPlayers(); ++i) names.push_back(g.Actions(i)[p[i]]);
  return names;
}

Json StatesJson(const Game& g, const Profile& s) {
  Json names = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) names.push_back(g.States(i)[s[i]]);
  return names;
}

Json SurvivorsJson(const Game& g, const SurvivorSets& s) {
  Json out = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) {
    Json m = Json::object();
    for (int t = 0; t < g.NumTypes(i); ++t) {
      Json acts = Json::array();
      for (int a : s[i][t]) acts.push_back(g.Actions(i)[a]);
      m[g.Types(i)[t]] = acts;
    }
    out.push_back(m);
  }
  return Json{{"survivors", out}};
}

int Validate(const Context& ctx, const std::string& path) {
  GameDocument doc = GameFromDocument(LoadDocument(path));
  for (const auto& v : doc.violations) ctx.err << v << '\n';
  if (!doc.violations.empty()) return kExitInvalid;
  ctx.out << "VALID\n";
  if (ctx.verbosity > 0) ctx.out << "hash " << HashGame(doc.game) << '\n';
  return kExitOk;
}

int Nonredundant(const Context& ctx, const std::string& path) {
  Game g = MinimumRepresentation(LoadGame(path));
  QuotientResult q = NonRedundantRepresentation(g);
  Json doc = GameToJson(q.game);
  Json classes = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) {
    Json m = Json::object();
    for (int t = 0; t < g.NumTypes(i); ++t) m[g.Types(i)[t]] = q.game.Types(i)[q.map.classes[i][t]];
    classes.push_back(m);
  }
  doc["type_classes"] = classes;
  ctx.Emit(doc);
  return kExitOk;
}

int Solve(const Context& ctx, const std::string& kind, const std::string& path) {
  Game g = LoadGame(path);
  DistributionalRule rule = kind == "bce" ? FindBce(g) : FindBibce(g);
  auto bad = kind == "bce" ? CheckBce(g, rule) : CheckBibce(g, rule);
  if (!bad.empty()) throw AssertionFailure(bad.front());
  ctx.Emit(RuleToJson(g, rule));
  return kExitOk;
}

int Potential(const Context& ctx, const std::string& mode, const std::string& path) {
  Game g = LoadGame(path);
  PotentialSearch search = FindPotential(g);
  if (!search.feasible) {
    ctx.out << "INFEASIBLE\n";
    Json cert;
    cert["state"] = StatesJson(g, search.state);
    Json y = Json::array();
    for (const Rational& c : search.certificate) y.push_back(ToString(c));
    cert["multipliers"] = y;
    cert["rows"] = "player-major, then action profile: u_i(a) = v(a) + q_i(a_-i)";
    ctx.Emit(Json{{"certificate", cert}});
    return kExitOk;
  }
  if (!CheckPotential(g, search.potential).empty()) {
    throw AssertionFailure("potential failed its direct check");
  }
  if (mode == "find") {
    ctx.out << "FEASIBLE\n";
    ctx.Emit(PotentialToJson(g, search.potential));
    return kExitOk;
  }
  RuleMaximum best = MaximizePotentialBibce(g, search.potential);
  ctx.out << "value " << ToString(best.value) << '\n';
  ctx.out << (FaceIsSingleton(best.face, best.block) ? "unique" : "not unique") << '\n';
  ctx.Emit(RuleToJson(g, best.rule));
  return kExitOk;
}

int Gp(const Context& ctx, const std::string& mode, const std::string& game_path,
       const std::string& covering_path, const std::string& f_path) {
  Game g = LoadGame(game_path);
  Covering c = CoveringFromDocument(g, LoadDocument(covering_path));
  GeneralizedPotential f = GpFromDocument(g, c, LoadDocument(f_path));
  if (mode == "maximize") {
    GpMaximum best = GpMaximizingBibce(g, f);
    ctx.out << "value " << ToString(best.value) << '\n';
    ctx.Emit(RuleToJson(g, best.rule));
    return kExitOk;
  }
  GpVerdict verdict = VerifyGeneralizedPotential(g, f);
  if (verdict.certified) {
    ctx.out << "CERTIFIED\n";
    return kExitOk;
  }
  if (!CheckGpCounterexample(g, f, verdict)) {
    throw AssertionFailure("counterexample did not re-verify");
  }
  ctx.out << "COUNTEREXAMPLE\n";
  const int i = verdict.player;
  Json doc;
  doc["player"] = g.Players()[i];
  Json subset = Json::array();
  for (int a : c.sets[i][verdict.subset]) subset.push_back(g.Actions(i)[a]);
  doc["subset"] = subset;
  doc["better_action"] = g.Actions(i)[verdict.better_action];
  doc["margin"] = ToString(verdict.slack);
  Json belief = Json::array();
  for (const BeliefAtom& atom : verdict.belief) {
    Json subsets = Json::array();
    for (int j = 0; j < g.NumPlayers(); ++j) {
      Json names = Json::array();
      for (int a : c.sets[j][atom.x[j]]) names.push_back(g.Actions(j)[a]);
      subsets.push_back(names);
    }
    belief.push_back({{"action_profile", ProfileJson(g, atom.a)},
                      {"subsets", subsets},
                      {"states", StatesJson(g, f.states[atom.state])},
                      {"prob", ToString(atom.p)}});
  }
  doc["belief"] = belief;
  ctx.Emit(doc);
  return kExitOk;
}

int Monotone(const Context& ctx, const std::string& path, bool supermodular_v) {
  Game g = LoadGame(path);
  MonotonePotential m = FindMonotonePotential(g, supermodular_v);
  if (!m.feasible) {
    ctx.out << "INFEASIBLE\n";
    return kExitOk;
  }
  ctx.out << "FEASIBLE\n";
  Json doc = PotentialToJson(g, m.v);
  Json lambda = Json::array();
  for (const Rational& l : m.lambda) lambda.push_back(ToString(l));
  doc["lambda"] = lambda;
  doc["slack"] = ToString(m.slack);
  ctx.Emit(doc);
  return kExitOk;
}

int Dominance(const Context& ctx, const std::string& path, std::optional<std::uint64_t> seed) {
  Game g = LoadGame(path);
  ctx.Emit(SurvivorsJson(g, IteratedStrictDominance(g, seed)));
  return kExitOk;
}

void EmitWitness(const Context& ctx, const ElaborationWitness& w, const std::string& dir) {
  ctx.out << "epsilon " << ToString(w.epsilon) << '\n';
  if (w.tail_mass != 0) ctx.out << "tail " << ToString(w.tail_mass) << '\n';
  if (dir.empty()) {
    ctx.Emit(GameToJson(w.perturbed));
  } else {
    WriteWitness(dir, w);
    ctx.out << "wrote " << dir << '\n';
  }
}

int EpsilonOfCmd(const Context& ctx, const std::string& base_path,
                 const std::string& perturbed_path, const std::string& tau_path) {
  Game base = LoadGame(base_path);
  Game perturbed = LoadGame(perturbed_path);
  TypeMap tau = TypeMapFromDocument(perturbed, base, LoadDocument(tau_path));
  EpsilonCertificate cert = EpsilonOf(base, perturbed, tau);
  if (!SatisfiesEpsilon(cert, cert.epsilon)) {
    throw AssertionFailure("certificate does not satisfy its own epsilon");
  }
  ctx.out << "epsilon " << ToString(cert.epsilon) << '\n';
  ctx.Emit(CertificateToJson(perturbed, cert));
  return kExitOk;
}

int Sweep(const Context& ctx, const std::string& base_path, const std::string& f_path,
          const std::string& covering_path, const std::string& family,
          const std::vector<std::string>& eps_text, int depth, std::uint64_t seed) {
  Game base = LoadGame(base_path);
  GeneralizedPotential f = LoadF(base, f_path, covering_path);
  std::vector<Rational> eps;
  for (const auto& e : eps_text) eps.push_back(ParseArg(e, "eps"));
  Family gen;
  if (family == "email") {
    if (HashGame(base) != HashGame(MotivatingExample())) {
      throw DocumentError(base_path + ":1:1: the email family elaborates the motivating game only");
    }
    gen = [depth](const Rational& e) { return EmailGameFamily(e, depth); };
  } else {
    gen = [base, seed](const Rational& e) { return RandomEpsilonElaboration(base, e, seed); };
  }
  SweepReport report = RobustnessSweep(f, family, gen, eps);
  report.seed = seed;
  report.depth = depth;
  std::string csv = SweepCsv(report);
  if (ctx.output.empty()) {
    ctx.out << "# game " << report.game_hash << " seed " << seed << " depth " << depth << '\n'
            << csv;
  } else {
    WriteText(ctx.output, csv);
    ctx.out << "# game " << report.game_hash << " seed " << seed << " depth " << depth << '\n';
  }
  return kExitOk;
}

int Reproduce(const Context& ctx, const std::string& which, const std::string& r,
              const std::string& p, int depth) {
  Report report = which == "motivating"
                      ? ReproduceMotivatingExample()
                      : ReproduceGlobalGameExample(ParseArg(r, "r"), ParseArg(p, "p"), depth);
  for (const auto& line : report.lines) ctx.out << line << '\n';
  return report.ok ? kExitOk : kExitAssertion;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief-invariant equilibria, potentials and elaborations"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{out, err, "", 0};
  app.add_option("-o,--out", ctx.output, "Write the document here instead of stdout");
  app.add_flag("-v,--verbose", ctx.verbosity, "More output");

  std::string game, second, third, kind, covering, family = "email";
  std::string r = "9/10", p = "1/10", eps_one = "1/10";
  std::vector<std::string> eps_list;
  std::uint64_t seed = 0;
  int depth = 12;
  bool supermodular_v = false;
  std::string witness_dir;

  auto* validate = app.add_subcommand("validate", "Check a game document");
  validate->add_option("game", game)->required();
  auto* minrep = app.add_subcommand("minrep", "Minimum representation");
  minrep->add_option("game", game)->required();
  auto* nonredundant = app.add_subcommand("nonredundant", "Non-redundant representation");
  nonredundant->add_option("game", game)->required();

  auto* solve = app.add_subcommand("solve", "Find a BIBCE or BCE");
  solve->add_option("kind", kind)->required()->check(CLI::IsMember({"bibce", "bce"}));
  solve->add_option("game", game)->required();

  auto* potential = app.add_subcommand("potential", "Find or maximize a potential");
  potential->add_option("mode", kind)->required()->check(CLI::IsMember({"find", "maximize"}));
  potential->add_option("game", game)->required();

  auto* gp = app.add_subcommand("gp", "Verify or maximize a generalized potential");
  gp->add_option("mode", kind)->required()->check(CLI::IsMember({"verify", "maximize"}));
  gp->add_option("game", game)->required();
  gp->add_option("covering", covering)->required();
  gp->add_option("F", second)->required();

  auto* monotone = app.add_subcommand("monotone-potential", "Monotone potential search");
  monotone->add_option("game", game)->required();
  monotone->add_flag("--supermodular-v", supermodular_v, "Also require v supermodular");

  std::optional<std::uint64_t> order_seed;
  auto* dominance = app.add_subcommand("dominance", "Iterated strict dominance");
  dominance->add_option("game", game)->required();
  dominance->add_option("--seed", order_seed, "Random one-at-a-time elimination order");

  auto* elaborate = app.add_subcommand("elaborate", "Generate an elaboration");
  elaborate->add_option("family", kind)->required()->check(CLI::IsMember({"email", "global", "random"}));
  elaborate->add_option("game", game, "Base game (random only)");
  elaborate->add_option("--eps", eps_one, "Perturbation size");
  elaborate->add_option("--depth", depth, "Truncation depth");
  elaborate->add_option("--seed", seed, "Seed (random only)");
  elaborate->add_option("--r", r, "Global game r");
  elaborate->add_option("--p", p, "Global game p");
  elaborate->add_option("--witness", witness_dir, "Write the witness bundle to this directory");

  auto* epsilon_of = app.add_subcommand("epsilon-of", "Certify epsilon for a perturbed game");
  epsilon_of->add_option("base", game)->required();
  epsilon_of->add_option("perturbed", second)->required();
  epsilon_of->add_option("tau", third)->required();

  auto* sweep = app.add_subcommand("sweep", "Distance sweep over an elaboration family");
  sweep->add_option("base", game)->required();
  sweep->add_option("F", second)->required();
  sweep->add_option("--covering", covering, "Covering for an F document");
  sweep->add_option("--family", family)->check(CLI::IsMember({"email", "random"}));
  sweep->add_option("--eps", eps_list)->required()->delimiter(',');
  sweep->add_option("--depth", depth, "Truncation depth (email)");
  sweep->add_option("--seed", seed, "Seed (random)");

  auto* reproduce = app.add_subcommand("reproduce", "Self-checking worked examples");
  reproduce->add_option("example", kind)->required()->check(CLI::IsMember({"motivating", "globalgame"}));
  reproduce->add_option("--r", r, "Global game r");
  reproduce->add_option("--p", p, "Global game p");
  reproduce->add_option("--depth", depth, "Global game depth");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }
  // Defaults differ per subcommand.
  if (reproduce->parsed() && reproduce->count("--depth") == 0) depth = 60;

  try {
    if (validate->parsed()) return Validate(ctx, game);
    if (minrep->parsed()) {
      ctx.Emit(GameToJson(MinimumRepresentation(LoadGame(game))));
      return kExitOk;
    }
    if (nonredundant->parsed()) return Nonredundant(ctx, game);
    if (solve->parsed()) return Solve(ctx, kind, game);
    if (potential->parsed()) return Potential(ctx, kind, game);
    if (gp->parsed()) return Gp(ctx, kind, game, covering, second);
    if (monotone->parsed()) return Monotone(ctx, game, supermodular_v);
    if (dominance->parsed()) return Dominance(ctx, game, order_seed);
    if (elaborate->parsed()) {
      if (kind == "global") {
        GlobalGame gg = GlobalGameFamily(ParseArg(r, "r"), ParseArg(p, "p"), depth);
        Json doc = GameToJson(gg.game);
        if (!witness_dir.empty()) {
          std::filesystem::create_directories(witness_dir);
          WriteText(witness_dir + "/game.json", doc.dump(2) + "\n");
          WriteText(witness_dir + "/potential.json",
                    PotentialToJson(gg.game, gg.potential).dump(2) + "\n");
          out << "wrote " << witness_dir << '\n';
        } else {
          ctx.Emit(doc);
        }
        return kExitOk;
      }
      Rational eps = ParseArg(eps_one, "eps");
      if (kind == "email") {
        EmitWitness(ctx, EmailGameFamily(eps, depth), witness_dir);
      } else {
        if (game.empty()) throw DocumentError("elaborate random: a base game is required");
        EmitWitness(ctx, RandomEpsilonElaboration(LoadGame(game), eps, seed), witness_dir);
      }
      return kExitOk;
    }
    if (epsilon_of->parsed()) return EpsilonOfCmd(ctx, game, second, third);
    if (sweep->parsed()) return Sweep(ctx, game, second, covering, family, eps_list, depth, seed);
    if (reproduce->parsed()) return Reproduce(ctx, kind, r, p, depth);
  } catch (const TheoryViolation& e) {
    err << e.what() << '\n';
    return kExitAssertion;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const BibceError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const Json::exception& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace bibce
