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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proeval/types.h"
#include "proeval/vocabulary.h"

namespace proeval {

void to_json(nlohmann::json& j, const Money& m);
void from_json(const nlohmann::json& j, Money& m);
void to_json(nlohmann::json& j, const DialogueTurn& t);
void from_json(const nlohmann::json& j, DialogueTurn& t);
void to_json(nlohmann::json& j, const PriceScenario& s);
void from_json(const nlohmann::json& j, PriceScenario& s);
void to_json(nlohmann::json& j, const TaskBackground& b);
void from_json(const nlohmann::json& j, TaskBackground& b);
void to_json(nlohmann::json& j, const GoldAnnotation& g);
void from_json(const nlohmann::json& j, GoldAnnotation& g);
void to_json(nlohmann::json& j, const EvalSample& s);
void from_json(const nlohmann::json& j, EvalSample& s);
void to_json(nlohmann::json& j, const ParsedOutput& p);
void from_json(const nlohmann::json& j, ParsedOutput& p);

// One compact JSON object per line, UTF-8, '\n' terminated.
void write_samples_jsonl(const std::filesystem::path& path,
                         const std::vector<EvalSample>& samples);
// Throws IngestError naming the 1-based line number of the first bad record.
std::vector<EvalSample> read_samples_jsonl(const std::filesystem::path& path);

struct ValidationResult {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Reports every violated invariant, not just the first.
ValidationResult validate_sample(const EvalSample& sample, const VocabularyStore& vocab);

// Returns `sample` unchanged, or throws ValidationError listing all violations.
const EvalSample& require_valid(const EvalSample& sample, const VocabularyStore& vocab);

// Sorts and de-duplicates in place.
void normalize_label_set(std::vector<std::string>& labels);

}  // namespace proeval
