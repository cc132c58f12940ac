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

#include "proeval/types.h"
#include "proeval/vocabulary.h"

namespace proeval {

enum class DatasetKind { kAbgCoqa, kPacific, kOtters, kTgconv, kCraigslist };

std::string_view to_token(DatasetKind kind);
DatasetKind parse_dataset_kind(std::string_view token);
TaskKind task_of(DatasetKind kind);

struct DatasetAdapterSpec {
  DatasetKind dataset = DatasetKind::kAbgCoqa;
  // A release file, or the release directory (the split file is then
  // resolved through the field mapping).
  std::filesystem::path source_path;
  // "test" | "dev".
  std::string split = "test";
  // Which side the system plays in negotiation dialogues.
  Role negotiation_system_role = Role::kSeller;
};

// Per-dataset candidate source keys for each logical field, plus split file
// names. Loaded from data/adapters/field_mapping.json.
class FieldMapping {
 public:
  static FieldMapping load(const std::filesystem::path& path);
  static FieldMapping from_json(const nlohmann::json& j);

  // Candidate keys for `field`; empty when the mapping does not name it.
  const std::vector<std::string>& keys(DatasetKind dataset, const std::string& field) const;
  // Split file names relative to a release directory.
  std::vector<std::string> split_files(DatasetKind dataset, const std::string& split) const;

 private:
  std::map<std::string, std::map<std::string, std::vector<std::string>>> fields_;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> splits_;
};

// Converts one release split into validated samples. Ids have the form
// "<dataset token>/<source index>" so they are unique across datasets.
// Records that cannot form a valid sample (e.g. a negotiation scenario whose
// listed price equals the buyer target) are skipped and reported in
// `warnings` when given; schema mismatches throw IngestError.
std::vector<EvalSample> load_dataset(const DatasetAdapterSpec& spec,
                                     const FieldMapping& mapping,
                                     const VocabularyStore& vocab,
                                     std::vector<std::string>* warnings = nullptr);

struct DatasetStats {
  std::size_t total = 0;
  std::map<std::string, std::size_t> by_task;
  std::map<std::string, std::size_t> by_dataset;
  std::map<std::string, std::size_t> by_difficulty;
  std::size_t clarification_total = 0;
  std::size_t ambiguous = 0;
  // ambiguous / clarification_total; unset without clarification samples.
  std::optional<double> ambiguity_rate;
};

DatasetStats dataset_stats(const std::vector<EvalSample>& samples);
nlohmann::json to_json(const DatasetStats& stats);

}  // namespace proeval
