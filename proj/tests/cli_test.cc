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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "bibce/cli.h"
#include "bibce/io.h"

namespace bibce {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Data(const std::string& name) { return std::string(BIBCE_DATA_DIR) + "/" + name; }

fs::path Scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("bibce_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("reproduce motivating prints quarter cells") {
  Run r = Cli({"reproduce", "motivating"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("(alpha,alpha) at theta1 theta1: 1/4") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("reproduce globalgame passes at the default parameters") {
  Run r = Cli({"reproduce", "globalgame"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("tau* = 7", 0) == 0);
  CHECK(Cli({"reproduce", "globalgame", "--r", "1/2", "--p", "5/7", "--depth", "10"}).code ==
        kExitInvalid);
}

TEST_CASE("validate: good and broken documents") {
  CHECK(Cli({"validate", Data("motivating.json")}).code == kExitOk);
  Run bad = Cli({"validate", Data("broken_game.json")});
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("broken_game.json:6:29: dangling type key 'u'") != std::string::npos);
  CHECK(bad.err.find("dangling action key 'X'") != std::string::npos);
}

TEST_CASE("malformed json exits 2 with a line anchor") {
  fs::path dir = Scratch("malformed");
  WriteText((dir / "g.json").string(), "{\n  \"players\": [\"1\"\n}\n");
  Run r = Cli({"validate", (dir / "g.json").string()});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("g.json:3:") != std::string::npos);
  CHECK(Cli({"validate", (dir / "missing.json").string()}).code == kExitInvalid);
}

TEST_CASE("unknown flags and subcommands are rejected") {
  CHECK(Cli({"validate", Data("motivating.json"), "--frobnicate"}).code == kExitInvalid);
  CHECK(Cli({"transmogrify"}).code == kExitInvalid);
  CHECK(Cli({}).code == kExitInvalid);
  CHECK(Cli({"sweep", Data("motivating.json"), Data("motivating_potential.json"), "--eps", "x"})
            .code == kExitInvalid);
}

TEST_CASE("potential find: matching pennies is infeasible with a certificate") {
  Run r = Cli({"potential", "find", Data("matching_pennies.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("INFEASIBLE\n", 0) == 0);
  Json doc = Json::parse(r.out.substr(r.out.find('{')));
  CHECK(doc["certificate"]["multipliers"].size() == 8);
  Run m = Cli({"potential", "maximize", Data("motivating.json")});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("value ") == 0);
  CHECK(m.out.find("unique") != std::string::npos);
}

TEST_CASE("emitted documents re-parse to equal values") {
  fs::path dir = Scratch("roundtrip");
  const std::string game = Data("global_game_6.json");
  const std::string minrep = (dir / "minrep.json").string();
  CHECK(Cli({"minrep", game, "-o", minrep}).code == kExitOk);
  Game original = GameFromDocument(LoadDocument(game)).game;
  Game reduced = GameFromDocument(LoadDocument(minrep)).game;
  CHECK(reduced == MinimumRepresentation(original));

  const std::string rule = (dir / "rule.json").string();
  CHECK(Cli({"solve", "bibce", game, "-o", rule}).code == kExitOk);
  DistributionalRule z = RuleFromDocument(original, LoadDocument(rule));
  CHECK(CheckBibce(original, z).empty());
  CHECK(RuleFromDocument(original, ParseDocument(RuleToJson(original, z).dump(), "x")) == z);

  const std::string pot = (dir / "pot.json").string();
  Run found = Cli({"potential", "find", game, "-o", pot});
  CHECK(found.code == kExitOk);
  PotentialFunction v = PotentialFromDocument(original, LoadDocument(pot));
  CHECK(CheckPotential(original, v).empty());
}

TEST_CASE("gp, monotone and dominance subcommands") {
  Run verify = Cli({"gp", "verify", Data("global_game_6.json"),
                    Data("global_game_6_monotone_covering.json"), Data("global_game_6_F.json")});
  CHECK(verify.code == kExitOk);
  CHECK(verify.out == "CERTIFIED\n");
  Run max = Cli({"gp", "maximize", Data("global_game_6.json"),
                 Data("global_game_6_monotone_covering.json"), Data("global_game_6_F.json")});
  CHECK(max.code == kExitOk);
  // r^{n+1} drops below 1/2 at n = 6.
  Run deep = Cli({"monotone-potential", Data("global_game_6.json")});
  CHECK(deep.code == kExitOk);
  CHECK(deep.out == "INFEASIBLE\n");
  fs::path dir = Scratch("monotone");
  CHECK(Cli({"elaborate", "global", "--depth", "4", "-o", (dir / "g.json").string()}).code ==
        kExitOk);
  Run mono = Cli({"monotone-potential", (dir / "g.json").string()});
  CHECK(mono.code == kExitOk);
  CHECK(mono.out.rfind("FEASIBLE\n", 0) == 0);
  Run dom = Cli({"dominance", Data("matching_pennies.json")});
  CHECK(dom.code == kExitOk);
  CHECK(Json::parse(dom.out)["survivors"][0]["t"].size() == 2);
  CHECK(Cli({"monotone-potential", Data("motivating.json")}).code == kExitOk);
}

TEST_CASE("elaborate, epsilon-of and sweep") {
  fs::path dir = Scratch("elaborate");
  Run email = Cli({"elaborate", "email", "--eps", "1/10", "--depth", "6", "--witness",
                   (dir / "email").string()});
  CHECK(email.code == kExitOk);
  Run eps = Cli({"epsilon-of", (dir / "email" / "base.json").string(),
                 (dir / "email" / "perturbed.json").string(),
                 (dir / "email" / "tau.json").string()});
  CHECK(eps.code == kExitOk);
  CHECK(eps.out.rfind(email.out.substr(0, email.out.find('\n')), 0) == 0);

  Run random = Cli({"elaborate", "random", Data("motivating.json"), "--eps", "1/8", "--seed", "3",
                    "--witness", (dir / "random").string()});
  CHECK(random.code == kExitOk);
  CHECK(Cli({"elaborate", "random", "--eps", "1/8"}).code == kExitInvalid);
  CHECK(Cli({"elaborate", "global", "--depth", "4", "--witness", (dir / "global").string()})
            .code == kExitOk);
  CHECK(fs::exists(dir / "global" / "potential.json"));

  Run sweep = Cli({"sweep", Data("motivating.json"), Data("motivating_potential.json"),
                   "--family", "email", "--depth", "6", "--eps", "1/4,1/10"});
  CHECK(sweep.code == kExitOk);
  CHECK(sweep.out.find("email,1,4,4773,16384,") != std::string::npos);
  CHECK(sweep.out.find("email,1,10,527637,4000000,") != std::string::npos);
  CHECK(Cli({"sweep", Data("matching_pennies.json"), Data("motivating_potential.json"),
             "--family", "email", "--eps", "1/4"})
            .code == kExitInvalid);
  Run zero = Cli({"sweep", Data("motivating.json"), Data("motivating_potential.json"),
                  "--family", "random", "--eps", "0"});
  CHECK(zero.code == kExitOk);
  CHECK(zero.out.find("random,0,1,0,1,0/1,") != std::string::npos);
}

}  // namespace
}  // namespace bibce
