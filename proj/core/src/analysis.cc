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

#include "proeval/analysis.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {
namespace {

void require_parseable_scheme(const std::vector<RunRecord>& run, std::string_view what) {
  for (const auto& r : run) {
    if (r.scheme == SchemeKind::kStandard) {
      throw UnsupportedSchemeError(
          std::string(what) +
          " is unavailable for Standard-scheme runs: their acts would have to be inferred by "
          "a trained classifier, which this harness does not include");
    }
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(text::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.emplace_back(text::trim(cur));
  return out;
}

}  // namespace

std::string_view to_token(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kWrongClarificationNeedPrediction: return "wrong_need";
    case ErrorCategory::kWrongAspect: return "wrong_aspect";
    case ErrorCategory::kUnderSpecifiedClarification: return "under_specified";
    case ErrorCategory::kOverSpecifiedClarification: return "over_specified";
    case ErrorCategory::kGenerationError: return "generation_error";
  }
  return "generation_error";
}

std::string_view display_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kWrongClarificationNeedPrediction:
      return "Wrong Clarification Need Prediction";
    case ErrorCategory::kWrongAspect: return "Wrong Aspect";
    case ErrorCategory::kUnderSpecifiedClarification: return "Under-specified Clarification";
    case ErrorCategory::kOverSpecifiedClarification: return "Over-specified Clarification";
    case ErrorCategory::kGenerationError: return "Generation Error";
  }
  return "Generation Error";
}

ErrorCategory parse_error_category(std::string_view s) {
  const std::string canon = text::canonicalize(s);
  for (ErrorCategory c : kAllErrorCategories) {
    if (canon == text::canonicalize(to_token(c)) || canon == text::canonicalize(display_name(c))) {
      return c;
    }
  }
  throw ConfigError("unknown error category '" + std::string(s) + "'");
}

TriageResult auto_triage(const std::vector<RunRecord>& run) {
  for (const auto& r : run) {
    if (r.task != TaskKind::kClarification) {
      throw ValidationError("auto_triage needs a clarification run; '" + r.sample_id +
                            "' is " + std::string(to_token(r.task)));
    }
  }
  require_parseable_scheme(run, "automatic triage");
  TriageResult out;
  for (const auto& r : run) {
    const std::string& ds = r.sample.source_dataset;
    if (!r.parsed.parsed()) {
      out.annotations.push_back(
          {r.sample_id, ErrorCategory::kGenerationError, AnnotationSource::kAutomatic, ds});
      continue;
    }
    const auto& g = r.sample.gold;
    if (!g.ambiguity_label) continue;
    const bool asks = r.parsed.act == std::string(kActAskClarification);
    if (asks != *g.ambiguity_label) {
      out.annotations.push_back({r.sample_id, ErrorCategory::kWrongClarificationNeedPrediction,
                                 AnnotationSource::kAutomatic, ds});
      continue;
    }
    if (asks && g.reference_response &&
        text::canonicalize(r.parsed.response) != text::canonicalize(*g.reference_response)) {
      out.unresolved.push_back(r.sample_id);
    }
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open annotation file " + path.string());
  std::vector<AnnotationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  int id_col = 0, cat_col = 1, ds_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto cols = split_csv_line(line);
    if (line_no == 1 && std::find(cols.begin(), cols.end(), "sample_id") != cols.end()) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "sample_id") id_col = static_cast<int>(i);
        if (cols[i] == "category") cat_col = static_cast<int>(i);
        if (cols[i] == "dataset") ds_col = static_cast<int>(i);
      }
      continue;
    }
    const int need = std::max({id_col, cat_col, ds_col}) + 1;
    if (static_cast<int>(cols.size()) < need) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": too few columns");
    }
    AnnotationRecord a;
    a.sample_id = cols[id_col];
    try {
      a.category = parse_error_category(cols[cat_col]);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    a.source = AnnotationSource::kHuman;
    if (ds_col >= 0) a.dataset = cols[ds_col];
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<AnnotationRecord> merge_annotations(const TriageResult& automatic,
                                                const std::vector<AnnotationRecord>& human) {
  std::map<std::string, AnnotationRecord> by_id;
  std::vector<std::string> order;
  auto put = [&](const AnnotationRecord& a) {
    if (!by_id.count(a.sample_id)) order.push_back(a.sample_id);
    by_id[a.sample_id] = a;
  };
  for (const auto& a : automatic.annotations) put(a);
  for (auto a : human) {
    if (a.dataset.empty()) {
      auto it = by_id.find(a.sample_id);
      if (it != by_id.end()) a.dataset = it->second.dataset;
    }
    put(a);
  }
  std::vector<AnnotationRecord> out;
  for (const auto& id : order) out.push_back(by_id[id]);
  return out;
}

std::map<std::string, std::map<ErrorCategory, double>> taxonomy_table(
    const std::vector<AnnotationRecord>& annotations) {
  if (annotations.empty()) throw ValidationError("taxonomy_table needs annotations");
  std::map<std::string, std::map<ErrorCategory, std::size_t>> counts;
  std::map<std::string, std::size_t> totals;
  for (const auto& a : annotations) {
    const std::string ds = a.dataset.empty() ? "all" : a.dataset;
    ++counts[ds][a.category];
    ++totals[ds];
  }
  std::map<std::string, std::map<ErrorCategory, double>> out;
  for (const auto& [ds, by_cat] : counts) {
    for (ErrorCategory c : kAllErrorCategories) {
      auto it = by_cat.find(c);
      const double n = it == by_cat.end() ? 0.0 : static_cast<double>(it->second);
      out[ds][c] = 100.0 * n / static_cast<double>(totals[ds]);
    }
  }
  return out;
}

std::vector<std::string> sample_error_cases(const std::vector<std::string>& ids, std::size_t n,
                                            std::uint64_t seed) {
  std::vector<std::string> pool(ids.begin(), ids.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  // Partial Fisher-Yates with an explicit modulo draw, so the result does not
  // depend on the standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(n, pool.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

ConfusionMatrix act_confusion(const std::vector<RunRecord>& run, const VocabularyStore& vocab) {
  if (run.empty()) throw ValidationError("act_confusion needs records");
  require_parseable_scheme(run, "act confusion");
  const TaskKind task = run.front().task;
  if (task == TaskKind::kTargetGuided) {
    throw ValidationError("target-guided runs have no dialogue acts");
  }
  ConfusionMatrix m;
  m.labels = act_vocabulary(task, vocab);
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < m.labels.size(); ++i) idx[m.labels[i]] = i;
  const std::size_t k = m.labels.size();
  m.counts.assign(k, std::vector<std::size_t>(k, 0));
  for (const auto& r : run) {
    const auto gold = gold_act_of(r.sample);
    if (!gold) continue;
    if (!r.parsed.parsed() || !r.parsed.act) {
      ++m.unparsed;
      continue;
    }
    auto gi = idx.find(*gold);
    auto pi = idx.find(*r.parsed.act);
    if (gi == idx.end() || pi == idx.end()) {
      ++m.unparsed;
      continue;
    }
    ++m.counts[gi->second][pi->second];
  }
  m.rates.assign(k, std::vector<double>(k, 0.0));
  m.zero_support.assign(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < k; ++j) row += m.counts[i][j];
    if (row == 0) {
      m.zero_support[i] = true;
      continue;
    }
    for (std::size_t j = 0; j < k; ++j) {
      m.rates[i][j] = static_cast<double>(m.counts[i][j]) / static_cast<double>(row);
    }
  }
  return m;
}

StrategyDistribution strategy_distribution(const std::vector<RunRecord>& run,
                                           const VocabularyStore& vocab) {
  if (run.empty()) throw ValidationError("strategy_distribution needs records");
  for (const auto& r : run) {
    if (r.task != TaskKind::kNegotiation) {
      throw ValidationError("strategy_distribution needs a negotiation run");
    }
  }
  require_parseable_scheme(run, "strategy distribution");
  StrategyDistribution d;
  d.labels = vocab.strategies().tokens();
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < d.labels.size(); ++i) idx[d.labels[i]] = i;
  std::vector<double> pred(d.labels.size(), 0), ref(d.labels.size(), 0);
  double pred_total = 0, ref_total = 0;
  for (const auto& r : run) {
    if (r.parsed.parsed() && r.parsed.strategies) {
      for (const auto& s : *r.parsed.strategies) {
        auto it = idx.find(s);
        if (it == idx.end()) continue;
        ++pred[it->second];
        ++pred_total;
      }
    }
    if (r.sample.gold.gold_strategies) {
      for (const auto& s : *r.sample.gold.gold_strategies) {
        auto it = idx.find(s);
        if (it == idx.end()) continue;
        ++ref[it->second];
        ++ref_total;
      }
    }
  }
  if (pred_total == 0) d.warnings.push_back("no predicted strategies; distribution is all zero");
  if (ref_total == 0) d.warnings.push_back("no reference strategies; distribution is all zero");
  for (auto& v : pred) v = pred_total == 0 ? 0.0 : v / pred_total;
  for (auto& v : ref) v = ref_total == 0 ? 0.0 : v / ref_total;
  d.predicted = std::move(pred);
  d.reference = std::move(ref);
  return d;
}

}  // namespace proeval
