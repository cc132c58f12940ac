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

#include "proeval/analysis.h"
#include "proeval/runner.h"
#include "proeval/selfplay.h"

namespace proeval {

struct ProviderSummary {
  std::string role;  // "system", "user", ...
  std::string kind;
  std::string model_id;
  double temperature = 0;
};

struct ReportInputs {
  // Free-form run description copied into the summary (config digests etc.).
  nlohmann::json run_metadata = nlohmann::json::object();
  std::vector<MetricReport> metrics;
  std::optional<std::map<std::string, std::map<ErrorCategory, double>>> taxonomy;
  std::optional<ConfusionMatrix> act_confusion;
  std::optional<StrategyDistribution> strategies;
  std::optional<SelfPlayAggregate> selfplay;
  std::vector<ProviderSummary> providers;
  std::string embedding_model;
  // Self-play used the shipped user-simulator prompt.
  bool user_simulator_stand_in = false;
};

// Files written, in the order they were written.
struct ReportBundle {
  std::vector<std::filesystem::path> files;
};

// Writes summary.json, manifest.json, summary.txt and one CSV per table into
// `out_dir`. Output depends only on `in`, so identical inputs give identical
// bytes. Throws ValidationError when there is nothing to report and Error
// when a file cannot be written.
ReportBundle emit_report(const std::filesystem::path& out_dir, const ReportInputs& in);

// Fixed-point rendering used throughout reports: one decimal for
// percentages, more for ratios.
std::string format_metric(std::string_view name, double value);
int metric_decimals(std::string_view name);

}  // namespace proeval
