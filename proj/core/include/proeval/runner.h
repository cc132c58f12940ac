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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proeval/embedding.h"
#include "proeval/gateway.h"
#include "proeval/prompt.h"
#include "proeval/types.h"
#include "proeval/vocabulary.h"

namespace proeval {

// One evaluated sample. Contains nothing time-dependent, so repeating a run
// against a warm cache reproduces the rows byte for byte.
struct RunRecord {
  std::string sample_id;
  TaskKind task = TaskKind::kClarification;
  SchemeKind scheme = SchemeKind::kStandard;
  int shots = 0;
  std::vector<std::string> demo_ids;
  std::string prompt;
  std::string prompt_digest;
  std::string raw_text;
  ParsedOutput parsed;
  // The evaluated sample, gold included.
  EvalSample sample;
  std::string provider_kind;
  std::string model_id;
  double temperature = 0;
  int max_new_tokens = 0;
  // Oldest history turns dropped to fit max_prompt_chars.
  int truncated_turns = 0;
  // Provider failure for this sample; parsed then holds a generation error.
  std::optional<std::string> provider_error;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

// Timing side channel, kept out of RunRecord.
struct RunLogEntry {
  std::string sample_id;
  std::int64_t latency_ms = 0;
  bool cached = false;
  std::optional<std::string> error;
};

struct RunOptions {
  TaskKind task = TaskKind::kClarification;
  SchemeKind scheme = SchemeKind::kStandard;
  int shots = 0;
  // Demonstration for one-shot prompts; the first pool entry when unset.
  std::optional<std::string> demo_id;
  // 0 = unlimited. Longer prompts lose their oldest history turns.
  std::size_t max_prompt_chars = 0;
  int workers = LlmGateway::kDefaultMaxInFlight;
};

struct RunResult {
  std::vector<RunRecord> records;
  std::vector<RunLogEntry> log;
};

// Records come back in input order regardless of worker scheduling.
// ProviderError and TimeoutError are recorded per sample; other errors abort.
RunResult run_eval(const std::vector<EvalSample>& samples, const RunOptions& opts,
                   const PromptLibrary& lib, LlmGateway& gateway);

// Prompt for one sample after context-limit truncation.
PromptBundle build_prompt(const EvalSample& sample, const RunOptions& opts,
                          const PromptLibrary& lib, int* truncated_turns = nullptr);

void write_run_jsonl(const std::filesystem::path& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_run_jsonl(const std::filesystem::path& path);
void write_run_log(const std::filesystem::path& path, const std::vector<RunLogEntry>& log);

struct MetricValue {
  std::string name;
  // Unset when the metric is undefined for this run (e.g. no scoreable rows).
  std::optional<double> value;
  std::size_t count = 0;
};

struct ScoreOptions {
  // 0 picks the dataset default: 1 for abg_coqa, 2 otherwise.
  int bleu_n = 0;
  EmbeddingProvider* sentence_embedding = nullptr;
  TokenEmbeddingProvider* token_embedding = nullptr;
};

int default_bleu_n(std::string_view dataset);

struct MetricReport {
  TaskKind task = TaskKind::kClarification;
  SchemeKind scheme = SchemeKind::kStandard;
  int shots = 0;
  std::string dataset;
  std::size_t samples = 0;
  std::size_t generation_errors = 0;
  int bleu_n = 0;
  std::string embedding_model;
  std::vector<MetricValue> metrics;
  std::vector<std::string> warnings;

  const MetricValue* find(std::string_view name) const;
};

// Scores one homogeneous run (single task, scheme and shot count).
MetricReport score_run(const std::vector<RunRecord>& records, const ScoreOptions& opts,
                       const VocabularyStore& vocab);

// The act a gold annotation implies: gold_act, or for clarification the
// ambiguity label mapped to ask_clarification / direct_answer.
std::optional<std::string> gold_act_of(const EvalSample& sample);

// The last price mentioned in a response, if any.
std::optional<Money> bargain_price(std::string_view response);

}  // namespace proeval
