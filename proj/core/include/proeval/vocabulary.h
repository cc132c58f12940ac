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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proeval/types.h"

namespace proeval {

struct VocabEntry {
  std::string token;
  // Name shown to the model, e.g. "Proposing a counter price".
  std::string display;
  // Alternative spellings accepted when matching (dataset field names, etc.).
  std::vector<std::string> aliases;
};

// Ordered label set. Lookup is insensitive to case, punctuation, and
// '_'/'-' versus space.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::string name, std::string version, std::vector<VocabEntry> entries);

  // Reads {"name", "version", "entries": [{"token", "display", "aliases"}]}.
  static Vocabulary load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  std::vector<std::string> tokens() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool contains(std::string_view token) const;
  // Maps any accepted spelling to its token.
  std::optional<std::string> match(std::string_view mention) const;
  // Display name of a token; the token itself when unknown.
  std::string display(std::string_view token) const;

 private:
  std::string name_;
  std::string version_;
  std::vector<VocabEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_canonical_;
};

// Act and strategy label sets for every task.
class VocabularyStore {
 public:
  VocabularyStore();

  // Loads negotiation_acts.json and negotiation_strategies.json from `dir`.
  // Missing files leave the negotiation vocabularies unset.
  static VocabularyStore load(const std::filesystem::path& dir);

  void set_negotiation(Vocabulary acts, Vocabulary strategies);
  bool has_negotiation() const { return negotiation_acts_.has_value(); }

  // Throws ConfigError for negotiation when no config was loaded.
  const Vocabulary& acts(TaskKind task) const;
  const Vocabulary& strategies() const;

 private:
  Vocabulary clarification_acts_;
  Vocabulary empty_;
  std::optional<Vocabulary> negotiation_acts_;
  std::optional<Vocabulary> negotiation_strategies_;
};

// Clarification: [direct_answer, ask_clarification]; target-guided: [];
// negotiation: the configured act list in file order.
std::vector<std::string> act_vocabulary(TaskKind task, const VocabularyStore& store);

inline constexpr std::string_view kActDirectAnswer = "direct_answer";
inline constexpr std::string_view kActAskClarification = "ask_clarification";

}  // namespace proeval
