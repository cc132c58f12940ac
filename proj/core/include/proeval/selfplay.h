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
#include <vector>

#include <nlohmann/json.hpp>

#include "proeval/embedding.h"
#include "proeval/gateway.h"
#include "proeval/prompt.h"
#include "proeval/types.h"

namespace proeval {

// True when the canonicalised target occurs in the response as a whole-word,
// case-insensitive token sequence.
bool detect_target(std::string_view response, std::string_view target);

struct SelfPlayConfig {
  std::string sample_id;
  std::string target;
  // "easy" | "hard"; empty when unknown.
  std::string difficulty;
  int max_turns = 8;
  SchemeKind scheme = SchemeKind::kStandard;
  int shots = 0;
  std::optional<std::string> demo_id;
  std::vector<DialogueTurn> seed_context;

  void validate() const;
  // Stable hash of everything above; names transcript files.
  std::string digest() const;
};

// Builds a config from a dialogue-level target-guided sample.
SelfPlayConfig selfplay_config_for(const EvalSample& sample, SchemeKind scheme, int shots,
                                   int max_turns = 8);

struct Transcript {
  std::string sample_id;
  std::string target;
  std::string difficulty;
  std::vector<DialogueTurn> seed_context;
  // Generated turns only, alternating, after the seed.
  std::vector<DialogueTurn> turns;
  // One per system turn.
  std::vector<ParsedOutput> system_outputs;
  bool success = false;
  std::optional<int> success_turn;
  int system_turns = 0;
  // Number of user-simulator prompts checked for target leakage.
  int secrecy_checks = 0;
  // Provider failure that ended the dialogue early.
  std::optional<std::string> error;
};

void to_json(nlohmann::json& j, const Transcript& t);
void from_json(const nlohmann::json& j, Transcript& t);

// Alternates system and simulated user until the system says the target or
// max_turns system turns pass. Every user-simulator prompt is checked for the
// target outside the system's own utterances; a leak throws Error.
Transcript run_selfplay(const SelfPlayConfig& cfg, const PromptLibrary& lib, LlmGateway& system,
                        LlmGateway& user);

// Runs dialogues concurrently; results are in input order.
std::vector<Transcript> run_selfplay_batch(const std::vector<SelfPlayConfig>& cfgs,
                                           const PromptLibrary& lib, LlmGateway& system,
                                           LlmGateway& user, int workers = 4);

// <dir>/<sanitised sample id>-<first 12 hex of cfg digest>.json
std::filesystem::path write_transcript(const std::filesystem::path& dir,
                                       const Transcript& t, const SelfPlayConfig& cfg);

enum class CoherenceMode { kAllSystemTurns, kFinalTurn };

struct SelfPlayStats {
  std::size_t dialogues = 0;
  std::size_t successes = 0;
  std::size_t errored = 0;
  double success_rate = 0;  // percentage
  // Unset when nothing succeeded.
  std::optional<double> mean_turns;
  // Unset when no system turn had a predecessor to compare with.
  std::optional<double> coherence;
};

struct SelfPlayAggregate {
  SelfPlayStats overall;
  std::map<std::string, SelfPlayStats> by_difficulty;
  std::string embedding_model;
  CoherenceMode coherence_mode = CoherenceMode::kAllSystemTurns;
};

SelfPlayAggregate aggregate_selfplay(const std::vector<Transcript>& transcripts,
                                     EmbeddingProvider& embedding,
                                     CoherenceMode mode = CoherenceMode::kAllSystemTurns);

}  // namespace proeval
