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

#include "bibce/io.h"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bibce {
namespace {

std::string Escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Records value offsets of text that nlohmann has already accepted.
class Scanner {
 public:
  Scanner(const std::string& text, std::map<std::string, std::size_t>& out)
      : text_(text), out_(out) {}

  void Value(const std::string& pointer) {
    Skip();
    out_[pointer] = pos_;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      Skip();
      if (Peek() == '}') {
        ++pos_;
        return;
      }
      while (pos_ < text_.size()) {
        Skip();
        std::string key = String();
        Skip();
        ++pos_;  // ':'
        Value(pointer + "/" + Escape(key));
        Skip();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        ++pos_;  // '}'
        return;
      }
    } else if (c == '[') {
      ++pos_;
      Skip();
      if (Peek() == ']') {
        ++pos_;
        return;
      }
      for (int k = 0; pos_ < text_.size(); ++k) {
        Value(pointer + "/" + std::to_string(k));
        Skip();
        if (Peek() == ',') {
          ++pos_;
          continue;
        }
        ++pos_;  // ']'
        return;
      }
    } else if (c == '"') {
      String();
    } else {
      while (pos_ < text_.size() && std::string(",]} \t\r\n").find(text_[pos_]) == std::string::npos) {
        ++pos_;
      }
    }
  }

 private:
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void Skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string String() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  const std::string& text_;
  std::map<std::string, std::size_t>& out_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> LineColumn(const std::string& text,
                                               std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string Ptr(const std::string& base, std::size_t index) {
  return base + "/" + std::to_string(index);
}

std::string Ptr(const std::string& base, const std::string& key) {
  return base + "/" + Escape(key);
}

const Json& Field(const Document& doc, const Json& obj, const std::string& ptr,
                  const std::string& key) {
  if (!obj.is_object()) doc.Fail(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) doc.Fail(ptr, "missing field '" + key + "'");
  return *it;
}

std::string Text(const Document& doc, const Json& v, const std::string& ptr) {
  if (!v.is_string()) doc.Fail(ptr, "expected a string");
  return v.get<std::string>();
}

Rational Number(const Document& doc, const Json& v, const std::string& ptr) {
  try {
    if (v.is_string()) return ParseRational(v.get<std::string>());
    if (v.is_number_integer()) return MakeRational(v.get<long>());
    if (v.is_number_float()) return ParseRational(v.dump());
  } catch (const BibceError& e) {
    doc.Fail(ptr, e.what());
  }
  doc.Fail(ptr, "expected a rational");
}

std::vector<std::string> Strings(const Document& doc, const Json& v,
                                 const std::string& ptr) {
  if (!v.is_array()) doc.Fail(ptr, "expected an array");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(Text(doc, v[k], Ptr(ptr, k)));
  return out;
}

std::vector<std::vector<std::string>> PerPlayer(const Document& doc, const Json& v,
                                                const std::string& ptr,
                                                std::size_t players, bool* common) {
  if (!v.is_array()) doc.Fail(ptr, "expected an array");
  if (common) *common = false;
  if (common && (v.empty() || v[0].is_string())) {
    *common = true;
    return std::vector<std::vector<std::string>>(players, Strings(doc, v, ptr));
  }
  if (v.size() != players) doc.Fail(ptr, "expected one list per player");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < players; ++i) out.push_back(Strings(doc, v[i], Ptr(ptr, i)));
  return out;
}

std::string StateName(const Game& g, int i, int s) {
  return s == kOffSupport ? std::string() : g.States(i)[s];
}

// Looks up a name per player; unknown names are reported and return false.
bool Resolve(const Document& doc, const Json& v, const std::string& ptr, const Game& g,
             int (Game::*find)(int, const std::string&) const, const std::string& what,
             Profile& out, std::vector<std::string>& violations) {
  if (!v.is_array() || v.size() != static_cast<std::size_t>(g.NumPlayers())) {
    doc.Fail(ptr, "expected one " + what + " per player");
  }
  out.assign(g.NumPlayers(), 0);
  bool ok = true;
  for (int i = 0; i < g.NumPlayers(); ++i) {
    std::string name = Text(doc, v[i], Ptr(ptr, i));
    out[i] = (g.*find)(i, name);
    if (out[i] < 0) {
      violations.push_back(doc.Anchor(Ptr(ptr, i), "dangling " + what + " key '" + name + "'"));
      ok = false;
    }
  }
  return ok;
}

}  // namespace

SourceIndex::SourceIndex(std::string name, std::string text)
    : name_(std::move(name)), text_(std::move(text)) {
  Scanner(text_, offsets_).Value("");
}

std::string SourceIndex::Where(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    auto it = offsets_.find(p);
    if (it != offsets_.end()) {
      auto [line, col] = LineColumn(text_, it->second);
      return name_ + ":" + std::to_string(line) + ":" + std::to_string(col);
    }
    if (p.empty()) return name_ + ":1:1";
    p = p.substr(0, p.rfind('/'));
  }
}

void Document::Fail(const std::string& pointer, const std::string& what) const {
  throw DocumentError(Anchor(pointer, what));
}

std::string Document::Anchor(const std::string& pointer, const std::string& what) const {
  return index.Where(pointer) + ": " + what + (pointer.empty() ? "" : " (at " + pointer + ")");
}

Document ParseDocument(const std::string& text, const std::string& name) {
  Document doc;
  try {
    doc.value = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto at = msg.find(": "); at != std::string::npos) msg = msg.substr(at + 2);
    throw DocumentError(name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                        ": " + msg);
  }
  doc.index = SourceIndex(name, text);
  return doc;
}

Document LoadDocument(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path + ":1:1: cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDocument(buffer.str(), path);
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw BibceError("cannot write " + path);
  out << text;
}

GameDocument GameFromDocument(const Document& doc) {
  const Json& root = doc.value;
  std::vector<std::string> players = Strings(doc, Field(doc, root, "", "players"), "/players");
  const std::size_t n = players.size();
  if (n == 0) doc.Fail("/players", "no players");
  auto actions = PerPlayer(doc, Field(doc, root, "", "actions"), "/actions", n, nullptr);
  auto types = PerPlayer(doc, Field(doc, root, "", "types"), "/types", n, nullptr);
  bool common = false;
  auto states = PerPlayer(doc, Field(doc, root, "", "payoff_states"), "/payoff_states", n, &common);
  for (std::size_t i = 0; i < n; ++i) {
    if (actions[i].empty()) doc.Fail(Ptr("/actions", i), "empty action set");
    if (types[i].empty()) doc.Fail(Ptr("/types", i), "empty type set");
    if (states[i].empty()) doc.Fail(Ptr("/payoff_states", i), "empty state set");
  }
  GameDocument out;
  try {
    out.game = Game(players, actions, types, states);
  } catch (const BibceError& e) {
    doc.Fail("", e.what());
  }
  Game& g = out.game;

  const Json& prior = Field(doc, root, "", "prior");
  if (!prior.is_array()) doc.Fail("/prior", "expected an array");
  for (std::size_t k = 0; k < prior.size(); ++k) {
    const std::string ptr = Ptr("/prior", k);
    const Json& entry = prior[k];
    Cell cell;
    bool ok = Resolve(doc, Field(doc, entry, ptr, "types"), ptr + "/types", g,
                      &Game::FindType, "type", cell.types, out.violations);
    if (entry.is_object() && entry.contains("state") && !entry.contains("states")) {
      std::string name = Text(doc, entry["state"], ptr + "/state");
      cell.states.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        cell.states[i] = g.FindState(static_cast<int>(i), name);
        if (cell.states[i] < 0) {
          out.violations.push_back(doc.Anchor(ptr + "/state", "dangling state key '" + name + "'"));
          ok = false;
          break;
        }
      }
    } else {
      ok = Resolve(doc, Field(doc, entry, ptr, "states"), ptr + "/states", g,
                   &Game::FindState, "state", cell.states, out.violations) && ok;
    }
    Rational mass = Number(doc, Field(doc, entry, ptr, "prob"), ptr + "/prob");
    if (mass < 0) {
      out.violations.push_back(doc.Anchor(ptr + "/prob", "negative prior mass"));
      continue;
    }
    if (ok) g.AddPrior(cell, mass);
  }

  const Json& payoffs = Field(doc, root, "", "payoffs");
  if (!payoffs.is_array() || payoffs.size() != n) {
    doc.Fail("/payoffs", "expected one payoff list per player");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::string base = Ptr("/payoffs", i);
    if (!payoffs[i].is_array()) doc.Fail(base, "expected an array");
    for (std::size_t k = 0; k < payoffs[i].size(); ++k) {
      const std::string ptr = Ptr(base, k);
      const Json& entry = payoffs[i][k];
      Profile a;
      bool ok = Resolve(doc, Field(doc, entry, ptr, "action_profile"), ptr + "/action_profile",
                        g, &Game::FindAction, "action", a, out.violations);
      std::string sname = Text(doc, Field(doc, entry, ptr, "own_state"), ptr + "/own_state");
      int s = g.FindState(static_cast<int>(i), sname);
      if (s < 0) {
        out.violations.push_back(doc.Anchor(ptr + "/own_state", "dangling state key '" + sname + "'"));
        ok = false;
      }
      Rational value = Number(doc, Field(doc, entry, ptr, "value"), ptr + "/value");
      if (ok) g.SetPayoff(static_cast<int>(i), g.Encode(a), s, value);
    }
  }
  for (const std::string& v : ValidateGame(g).violations) {
    out.violations.push_back(doc.Anchor("/prior", v));
  }
  return out;
}

Json GameToJson(const Game& g) {
  Json root;
  root["players"] = g.Players();
  Json actions = Json::array(), types = Json::array(), states = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) {
    actions.push_back(g.Actions(i));
    types.push_back(g.Types(i));
    states.push_back(g.States(i));
  }
  root["actions"] = actions;
  root["types"] = types;
  root["payoff_states"] = states;
  Json prior = Json::array();
  for (const auto& [cell, mass] : g.Prior()) {
    Json entry;
    Json t = Json::array(), s = Json::array();
    for (int i = 0; i < g.NumPlayers(); ++i) {
      t.push_back(g.Types(i)[cell.types[i]]);
      s.push_back(g.States(i)[cell.states[i]]);
    }
    entry["types"] = t;
    entry["states"] = s;
    entry["prob"] = ToString(mass);
    prior.push_back(entry);
  }
  root["prior"] = prior;
  Json payoffs = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) {
    Json list = Json::array();
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
      Profile p = g.Decode(a);
      for (int s = 0; s < g.NumStates(i); ++s) {
        Json entry;
        Json names = Json::array();
        for (int j = 0; j < g.NumPlayers(); ++j) names.push_back(g.Actions(j)[p[j]]);
        entry["action_profile"] = names;
        entry["own_state"] = g.States(i)[s];
        entry["value"] = ToString(g.Payoff(i, a, s));
        list.push_back(entry);
      }
    }
    payoffs.push_back(list);
  }
  root["payoffs"] = payoffs;
  return root;
}

std::string HashGame(const Game& game) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : GameToJson(game).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json RuleToJson(const Game& g, const DistributionalRule& rule) {
  Json list = Json::array();
  for (const auto& [key, mass] : rule.mass) {
    Json entry;
    Json names = Json::array();
    Profile p = g.Decode(key.action);
    for (int j = 0; j < g.NumPlayers(); ++j) names.push_back(g.Actions(j)[p[j]]);
    entry["action_profile"] = names;
    Json t = Json::array(), s = Json::array();
    for (int i = 0; i < g.NumPlayers(); ++i) {
      t.push_back(key.cell.types[i] < 0 ? Json() : Json(g.Types(i)[key.cell.types[i]]));
      s.push_back(key.cell.states[i] == kOffSupport ? Json() : Json(StateName(g, i, key.cell.states[i])));
    }
    entry["types"] = t;
    entry["states"] = s;
    entry["prob"] = ToString(mass);
    list.push_back(entry);
  }
  return Json{{"rule", list}};
}

DistributionalRule RuleFromDocument(const Game& g, const Document& doc) {
  const Json& list = Field(doc, doc.value, "", "rule");
  if (!list.is_array()) doc.Fail("/rule", "expected an array");
  DistributionalRule rule;
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string ptr = Ptr("/rule", k);
    const Json& entry = list[k];
    RuleKey key;
    Profile a;
    bool ok = Resolve(doc, Field(doc, entry, ptr, "action_profile"), ptr + "/action_profile", g,
                      &Game::FindAction, "action", a, violations);
    ok = Resolve(doc, Field(doc, entry, ptr, "types"), ptr + "/types", g, &Game::FindType,
                 "type", key.cell.types, violations) && ok;
    const Json& states = Field(doc, entry, ptr, "states");
    bool off = states.is_array() && !states.empty() && states[0].is_null();
    if (off) {
      key.cell.states.assign(g.NumPlayers(), kOffSupport);
    } else {
      ok = Resolve(doc, states, ptr + "/states", g, &Game::FindState, "state",
                   key.cell.states, violations) && ok;
    }
    if (!ok) doc.Fail(ptr, violations.back());
    key.action = g.Encode(a);
    rule.mass[key] += Number(doc, Field(doc, entry, ptr, "prob"), ptr + "/prob");
  }
  return rule;
}

Json CoveringToJson(const Game& g, const Covering& c) {
  Json out = Json::array();
  for (int i = 0; i < g.NumPlayers(); ++i) {
    Json player = Json::array();
    for (const auto& subset : c.sets[i]) {
      Json names = Json::array();
      for (int a : subset) names.push_back(g.Actions(i)[a]);
      player.push_back(names);
    }
    out.push_back(player);
  }
  return Json{{"covering", out}};
}

Covering CoveringFromDocument(const Game& g, const Document& doc) {
  const Json& list = Field(doc, doc.value, "", "covering");
  if (!list.is_array() || list.size() != static_cast<std::size_t>(g.NumPlayers())) {
    doc.Fail("/covering", "expected one subset list per player");
  }
  Covering c;
  for (int i = 0; i < g.NumPlayers(); ++i) {
    const std::string base = Ptr("/covering", i);
    if (!list[i].is_array()) doc.Fail(base, "expected an array");
    std::vector<std::vector<int>> subsets;
    for (std::size_t k = 0; k < list[i].size(); ++k) {
      std::vector<int> subset;
      auto names = Strings(doc, list[i][k], Ptr(base, k));
      for (std::size_t m = 0; m < names.size(); ++m) {
        int a = g.FindAction(i, names[m]);
        if (a < 0) doc.Fail(Ptr(Ptr(base, k), m), "dangling action key '" + names[m] + "'");
        subset.push_back(a);
      }
      std::sort(subset.begin(), subset.end());
      subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
      subsets.push_back(subset);
    }
    c.sets.push_back(subsets);
  }
  auto problems = ValidateCovering(g, c);
  if (!problems.empty()) doc.Fail("/covering", problems.front());
  return c;
}

Json GpToJson(const Game& g, const GeneralizedPotential& f) {
  Json list = Json::array();
  for (std::size_t s = 0; s < f.states.size(); ++s) {
    for (std::size_t x = 0; x < f.covering.NumProfiles(); ++x) {
      Profile xs = f.covering.Decode(x);
      Json subsets = Json::array();
      for (int i = 0; i < g.NumPlayers(); ++i) {
        Json names = Json::array();
        for (int a : f.covering.sets[i][xs[i]]) names.push_back(g.Actions(i)[a]);
        subsets.push_back(names);
      }
      Json entry;
      Json st = Json::array();
      for (int i = 0; i < g.NumPlayers(); ++i) st.push_back(g.States(i)[f.states[s][i]]);
      entry["states"] = st;
      entry["subsets"] = subsets;
      entry["value"] = ToString(f.f[s][x]);
      list.push_back(entry);
    }
  }
  return Json{{"F", list}};
}

GeneralizedPotential GpFromDocument(const Game& g, const Covering& c, const Document& doc) {
  GeneralizedPotential f;
  f.covering = c;
  f.states = SupportStates(g);
  f.f.assign(f.states.size(), std::vector<Rational>(c.NumProfiles()));
  const Json& list = Field(doc, doc.value, "", "F");
  if (!list.is_array()) doc.Fail("/F", "expected an array");
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string ptr = Ptr("/F", k);
    const Json& entry = list[k];
    Profile states;
    if (!Resolve(doc, Field(doc, entry, ptr, "states"), ptr + "/states", g, &Game::FindState,
                 "state", states, violations)) {
      doc.Fail(ptr, violations.back());
    }
    auto it = std::lower_bound(f.states.begin(), f.states.end(), states);
    if (it == f.states.end() || *it != states) doc.Fail(ptr + "/states", "state profile outside the support");
    const Json& subsets = Field(doc, entry, ptr, "subsets");
    if (!subsets.is_array() || subsets.size() != static_cast<std::size_t>(g.NumPlayers())) {
      doc.Fail(ptr + "/subsets", "expected one subset per player");
    }
    Profile x(g.NumPlayers());
    for (int i = 0; i < g.NumPlayers(); ++i) {
      std::vector<int> subset;
      auto names = Strings(doc, subsets[i], Ptr(ptr + "/subsets", i));
      for (const auto& name : names) {
        int a = g.FindAction(i, name);
        if (a < 0) doc.Fail(Ptr(ptr + "/subsets", i), "dangling action key '" + name + "'");
        subset.push_back(a);
      }
      std::sort(subset.begin(), subset.end());
      auto pos = std::find(c.sets[i].begin(), c.sets[i].end(), subset);
      if (pos == c.sets[i].end()) doc.Fail(Ptr(ptr + "/subsets", i), "subset not in the covering");
      x[i] = static_cast<int>(pos - c.sets[i].begin());
    }
    f.f[it - f.states.begin()][c.Encode(x)] =
        Number(doc, Field(doc, entry, ptr, "value"), ptr + "/value");
  }
  return f;
}

Json PotentialToJson(const Game& g, const PotentialFunction& v) {
  Json list = Json::array();
  for (std::size_t s = 0; s < v.states.size(); ++s) {
    Json st = Json::array();
    for (int i = 0; i < g.NumPlayers(); ++i) st.push_back(g.States(i)[v.states[s][i]]);
    for (ActionIndex a = 0; a < g.NumActionProfiles(); ++a) {
      Json names = Json::array();
      Profile p = g.Decode(a);
      for (int j = 0; j < g.NumPlayers(); ++j) names.push_back(g.Actions(j)[p[j]]);
      Json entry;
      entry["states"] = st;
      entry["action_profile"] = names;
      entry["value"] = ToString(v.v[s][a]);
      list.push_back(entry);
    }
  }
  return Json{{"potential", list}};
}

PotentialFunction PotentialFromDocument(const Game& g, const Document& doc) {
  PotentialFunction v;
  v.states = SupportStates(g);
  v.v.assign(v.states.size(), std::vector<Rational>(g.NumActionProfiles()));
  const Json& list = Field(doc, doc.value, "", "potential");
  if (!list.is_array()) doc.Fail("/potential", "expected an array");
  std::vector<std::string> violations;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string ptr = Ptr("/potential", k);
    const Json& entry = list[k];
    Profile states, a;
    if (!Resolve(doc, Field(doc, entry, ptr, "states"), ptr + "/states", g, &Game::FindState,
                 "state", states, violations) ||
        !Resolve(doc, Field(doc, entry, ptr, "action_profile"), ptr + "/action_profile", g,
                 &Game::FindAction, "action", a, violations)) {
      doc.Fail(ptr, violations.back());
    }
    int s = v.StateIndex(states);
    if (s < 0) doc.Fail(ptr + "/states", "state profile outside the support");
    v.v[s][g.Encode(a)] = Number(doc, Field(doc, entry, ptr, "value"), ptr + "/value");
  }
  return v;
}

Json TypeMapToJson(const Game& from, const Game& to, const TypeMap& tau) {
  Json out = Json::array();
  for (int i = 0; i < from.NumPlayers(); ++i) {
    Json m = Json::object();
    for (int t = 0; t < from.NumTypes(i); ++t) {
      int target = tau.map[i][t];
      m[from.Types(i)[t]] = target < 0 ? Json() : Json(to.Types(i)[target]);
    }
    out.push_back(m);
  }
  return Json{{"tau", out}};
}

TypeMap TypeMapFromDocument(const Game& from, const Game& to, const Document& doc) {
  const Json& list = Field(doc, doc.value, "", "tau");
  if (!list.is_array() || list.size() != static_cast<std::size_t>(from.NumPlayers())) {
    doc.Fail("/tau", "expected one map per player");
  }
  TypeMap tau;
  for (int i = 0; i < from.NumPlayers(); ++i) {
    const std::string base = Ptr("/tau", i);
    if (!list[i].is_object()) doc.Fail(base, "expected an object");
    std::vector<int> m(from.NumTypes(i), -1);
    for (auto it = list[i].begin(); it != list[i].end(); ++it) {
      const std::string ptr = Ptr(base, it.key());
      int t = from.FindType(i, it.key());
      if (t < 0) doc.Fail(ptr, "dangling type key '" + it.key() + "'");
      if (it.value().is_null()) continue;
      std::string name = Text(doc, it.value(), ptr);
      int target = to.FindType(i, name);
      if (target < 0) doc.Fail(ptr, "dangling type key '" + name + "'");
      m[t] = target;
    }
    tau.map.push_back(m);
  }
  return tau;
}

Json StateMapToJson(const Game& from, const Game& to, const StateMap& phi) {
  Json out = Json::array();
  for (int i = 0; i < from.NumPlayers(); ++i) {
    Json m = Json::object();
    for (int s = 0; s < from.NumStates(i); ++s) {
      int target = phi.map[i][s];
      m[from.States(i)[s]] = target == kOffSupport ? Json() : Json(to.States(i)[target]);
    }
    out.push_back(m);
  }
  return Json{{"phi", out}};
}

StateMap StateMapFromDocument(const Game& from, const Game& to, const Document& doc) {
  const Json& list = Field(doc, doc.value, "", "phi");
  if (!list.is_array() || list.size() != static_cast<std::size_t>(from.NumPlayers())) {
    doc.Fail("/phi", "expected one map per player");
  }
  StateMap phi;
  for (int i = 0; i < from.NumPlayers(); ++i) {
    const std::string base = Ptr("/phi", i);
    if (!list[i].is_object()) doc.Fail(base, "expected an object");
    std::vector<int> m(from.NumStates(i), kOffSupport);
    for (auto it = list[i].begin(); it != list[i].end(); ++it) {
      const std::string ptr = Ptr(base, it.key());
      int s = from.FindState(i, it.key());
      if (s < 0) doc.Fail(ptr, "dangling state key '" + it.key() + "'");
      if (it.value().is_null()) continue;
      std::string name = Text(doc, it.value(), ptr);
      int target = to.FindState(i, name);
      if (target < 0) doc.Fail(ptr, "dangling state key '" + name + "'");
      m[s] = target;
    }
    phi.map.push_back(m);
  }
  return phi;
}

Json CertificateToJson(const Game& perturbed, const EpsilonCertificate& cert) {
  Json out;
  out["epsilon"] = ToString(cert.epsilon);
  out["payoff_level"] = ToString(cert.payoff_level);
  out["prior_distance"] = ToString(cert.prior_distance);
  out["sharp_mass"] = ToString(cert.sharp_mass);
  Json players = Json::array();
  for (int i = 0; i < perturbed.NumPlayers(); ++i) {
    Json p;
    p["belief_level"] = ToString(cert.belief_level[i]);
    Json flats = Json::array();
    for (int t : cert.flats[i]) flats.push_back(perturbed.Types(i)[t]);
    p["flat"] = flats;
    Json dist = Json::object();
    for (int t = 0; t < perturbed.NumTypes(i); ++t) {
      if (cert.type_mass[i][t] > 0) dist[perturbed.Types(i)[t]] = ToString(cert.distance[i][t]);
    }
    p["belief_distance"] = dist;
    players.push_back(p);
  }
  out["players"] = players;
  return out;
}

void WriteWitness(const std::string& dir, const ElaborationWitness& w) {
  std::filesystem::create_directories(dir);
  WriteText(dir + "/base.json", GameToJson(w.base).dump(2) + "\n");
  WriteText(dir + "/perturbed.json", GameToJson(w.perturbed).dump(2) + "\n");
  WriteText(dir + "/tau.json", TypeMapToJson(w.perturbed, w.base, w.tau).dump(2) + "\n");
  WriteText(dir + "/phi.json", StateMapToJson(w.perturbed, w.base, w.phi).dump(2) + "\n");
  Json cert = CertificateToJson(w.perturbed, EpsilonOf(w.base, w.perturbed, w.tau));
  cert["tail_mass"] = ToString(w.tail_mass);
  WriteText(dir + "/certificate.json", cert.dump(2) + "\n");
}

}  // namespace bibce
