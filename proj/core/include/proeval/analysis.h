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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "proeval/runner.h"
#include "proeval/vocabulary.h"

namespace proeval {

enum class ErrorCategory {
  kWrongClarificationNeedPrediction,
  kWrongAspect,
  kUnderSpecifiedClarification,
  kOverSpecifiedClarification,
  kGenerationError,
};

inline constexpr ErrorCategory kAllErrorCategories[] = {
    ErrorCategory::kWrongClarificationNeedPrediction, ErrorCategory::kWrongAspect,
    ErrorCategory::kUnderSpecifiedClarification, ErrorCategory::kOverSpecifiedClarification,
    ErrorCategory::kGenerationError};

// "wrong_need", "wrong_aspect", "under_specified", "over_specified",
// "generation_error".
std::string_view to_token(ErrorCategory c);
// "Wrong Clarification Need Prediction", ...
std::string_view display_name(ErrorCategory c);
// Accepts tokens and display names in any case. Throws ConfigError.
ErrorCategory parse_error_category(std::string_view s);

enum class AnnotationSource { kAutomatic, kHuman };

struct AnnotationRecord {
  std::string sample_id;
  ErrorCategory category = ErrorCategory::kGenerationError;
  AnnotationSource source = AnnotationSource::kAutomatic;
  std::string dataset;
};

struct TriageResult {
  std::vector<AnnotationRecord> annotations;
  // Correct clarification need but a question that differs from the
  // reference; these need a human judgement.
  std::vector<std::string> unresolved;
};

// Clarification runs under Proactive or ProCoT only; other runs throw
// ValidationError (wrong task) or UnsupportedSchemeError (Standard).
TriageResult auto_triage(const std::vector<RunRecord>& run);

// CSV with header "sample_id,category" (a "dataset" column is optional).
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

// Human labels are added for unresolved ids and replace automatic labels for
// the same id.
std::vector<AnnotationRecord> merge_annotations(const TriageResult& automatic,
                                                const std::vector<AnnotationRecord>& human);

// Per dataset, the share of annotated failures in each of the five
// categories, as percentages. Throws ValidationError on empty input.
std::map<std::string, std::map<ErrorCategory, double>> taxonomy_table(
    const std::vector<AnnotationRecord>& annotations);

// `n` distinct failure cases drawn with a seeded generator (all of them when
// fewer exist), in a deterministic order for a given seed.
std::vector<std::string> sample_error_cases(const std::vector<std::string>& ids, std::size_t n,
                                            std::uint64_t seed);

struct ConfusionMatrix {
  std::vector<std::string> labels;
  // counts[gold][predicted]
  std::vector<std::vector<std::size_t>> counts;
  // Row-normalised counts; zero rows stay zero.
  std::vector<std::vector<double>> rates;
  std::vector<bool> zero_support;
  // Records skipped because their act could not be parsed.
  std::size_t unparsed = 0;
};

// Gold act x predicted act over the task's act vocabulary. Standard-scheme
// runs throw UnsupportedSchemeError: their acts would need a trained
// classifier that this harness does not provide.
ConfusionMatrix act_confusion(const std::vector<RunRecord>& run, const VocabularyStore& vocab);

struct StrategyDistribution {
  std::vector<std::string> labels;
  std::vector<double> predicted;  // fraction of all predicted selections
  std::vector<double> reference;  // fraction of all gold selections
  std::vector<std::string> warnings;
};

StrategyDistribution strategy_distribution(const std::vector<RunRecord>& run,
                                           const VocabularyStore& vocab);

}  // namespace proeval
