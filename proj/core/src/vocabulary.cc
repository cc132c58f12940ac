// Copyright 2026 The proeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "proeval/vocabulary.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {

Vocabulary::Vocabulary(std::string name, std::string version,
                       std::vector<VocabEntry> entries)
    : name_(std::move(name)), version_(std::move(version)), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const VocabEntry& e = entries_[i];
    if (e.token.empty()) throw ConfigError("vocabulary '" + name_ + "': empty token");
    for (const std::string* spelling : {&e.token, &e.display}) {
      if (!spelling->empty()) by_canonical_.emplace(text::canonicalize(*spelling), i);
    }
    for (const std::string& alias : e.aliases) {
      by_canonical_.emplace(text::canonicalize(alias), i);
    }
  }
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open vocabulary file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed vocabulary file " + path.string() + ": " + e.what());
  }
  std::vector<VocabEntry> entries;
  for (const auto& item : j.at("entries")) {
    VocabEntry e;
    e.token = item.at("token").get<std::string>();
    e.display = item.value("display", e.token);
    e.aliases = item.value("aliases", std::vector<std::string>{});
    entries.push_back(std::move(e));
  }
  return Vocabulary(j.value("name", path.stem().string()), j.value("version", ""),
                    std::move(entries));
}

std::vector<std::string> Vocabulary::tokens() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.token);
  return out;
}

bool Vocabulary::contains(std::string_view token) const {
  for (const auto& e : entries_) {
    if (e.token == token) return true;
  }
  return false;
}

std::optional<std::string> Vocabulary::match(std::string_view mention) const {
  auto it = by_canonical_.find(text::canonicalize(mention));
  if (it == by_canonical_.end()) return std::nullopt;
  return entries_[it->second].token;
}

std::string Vocabulary::display(std::string_view token) const {
  for (const auto& e : entries_) {
    if (e.token == token) return e.display;
  }
  return std::string(token);
}

VocabularyStore::VocabularyStore()
    : clarification_acts_("clarification_acts", "1",
                          {{std::string(kActDirectAnswer), "Directly Answer the Question",
                            {"the answer is", "answer"}},
                           {std::string(kActAskClarification), "Ask a Clarification Question",
                            {"the clarifying question is", "clarify"}}}),
      empty_("target_guided_acts", "1", {}) {}

VocabularyStore VocabularyStore::load(const std::filesystem::path& dir) {
  VocabularyStore store;
  const auto acts = dir / "negotiation_acts.json";
  const auto strategies = dir / "negotiation_strategies.json";
  if (std::filesystem::exists(acts) && std::filesystem::exists(strategies)) {
    store.set_negotiation(Vocabulary::load(acts), Vocabulary::load(strategies));
  }
  return store;
}

void VocabularyStore::set_negotiation(Vocabulary acts, Vocabulary strategies) {
  negotiation_acts_ = std::move(acts);
  negotiation_strategies_ = std::move(strategies);
}

const Vocabulary& VocabularyStore::acts(TaskKind task) const {
  switch (task) {
    case TaskKind::kClarification:
      return clarification_acts_;
    case TaskKind::kTargetGuided:
      return empty_;
    case TaskKind::kNegotiation:
      if (!negotiation_acts_) {
        throw ConfigError("negotiation act vocabulary not configured");
      }
      return *negotiation_acts_;
  }
  return empty_;
}

const Vocabulary& VocabularyStore::strategies() const {
  if (!negotiation_strategies_) {
    throw ConfigError("negotiation strategy vocabulary not configured");
  }
  return *negotiation_strategies_;
}

std::vector<std::string> act_vocabulary(TaskKind task, const VocabularyStore& store) {
  return store.acts(task).tokens();
}

}  // namespace proeval
