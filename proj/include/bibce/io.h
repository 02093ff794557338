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

#ifndef BIBCE_IO_H_
#define BIBCE_IO_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "bibce/elaborations.h"
#include "bibce/game.h"
#include "bibce/potentials.h"

namespace bibce {

using Json = nlohmann::ordered_json;

// A malformed document. The message starts with "<name>:<line>:<col>:".
class DocumentError : public BibceError {
 public:
  explicit DocumentError(const std::string& what) : BibceError(what) {}
};

// Start offset of every value in the source, keyed by JSON pointer.
class SourceIndex {
 public:
  SourceIndex() = default;
  SourceIndex(std::string name, std::string text);

  // "<name>:<line>:<col>" of the value at `pointer`, or of its closest
  // indexed ancestor.
  std::string Where(const std::string& pointer) const;

 private:
  std::string name_;
  std::string text_;
  std::map<std::string, std::size_t> offsets_;
};

struct Document {
  Json value;
  SourceIndex index;

  // Throws DocumentError anchored at `pointer`.
  [[noreturn]] void Fail(const std::string& pointer, const std::string& what) const;
  std::string Anchor(const std::string& pointer, const std::string& what) const;
};

Document ParseDocument(const std::string& text, const std::string& name);
Document LoadDocument(const std::string& path);
void WriteText(const std::string& path, const std::string& text);

struct GameDocument {
  Game game;
  std::vector<std::string> violations;  // anchored dangling keys
};

// Structural problems throw DocumentError; keys naming unknown players,
// actions, types or states are collected as violations.
GameDocument GameFromDocument(const Document& doc);
Json GameToJson(const Game& game);

// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string HashGame(const Game& game);

Json RuleToJson(const Game& game, const DistributionalRule& rule);
DistributionalRule RuleFromDocument(const Game& game, const Document& doc);

Json CoveringToJson(const Game& game, const Covering& covering);
Covering CoveringFromDocument(const Game& game, const Document& doc);

Json GpToJson(const Game& game, const GeneralizedPotential& f);
GeneralizedPotential GpFromDocument(const Game& game, const Covering& covering,
                                    const Document& doc);

Json PotentialToJson(const Game& game, const PotentialFunction& v);
PotentialFunction PotentialFromDocument(const Game& game, const Document& doc);

Json TypeMapToJson(const Game& from, const Game& to, const TypeMap& tau);
TypeMap TypeMapFromDocument(const Game& from, const Game& to, const Document& doc);

Json StateMapToJson(const Game& from, const Game& to, const StateMap& phi);
StateMap StateMapFromDocument(const Game& from, const Game& to, const Document& doc);

Json CertificateToJson(const Game& perturbed, const EpsilonCertificate& cert);

// base.json, perturbed.json, tau.json, phi.json and certificate.json.
void WriteWitness(const std::string& dir, const ElaborationWitness& witness);

}  // namespace bibce

#endif  // BIBCE_IO_H_
