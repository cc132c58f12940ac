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

#include "proeval/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.0" || s == "-0.00" || s == "-0.0000") s = s.substr(1);
  return s;
}

// A JSON number carrying exactly the rounded value.
nlohmann::json rounded(double v, int decimals) { return std::stod(fixed(v, decimals)); }

nlohmann::json optional_number(const std::optional<double>& v, int decimals) {
  return v ? rounded(*v, decimals) : nlohmann::json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Writer {
 public:
  Writer(std::filesystem::path dir, ReportBundle& bundle)
      : dir_(std::move(dir)), bundle_(bundle) {}

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    const auto tmp = dir_ / (name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write " + tmp.string());
      out << content;
      if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
    bundle_.files.push_back(path);
  }

 private:
  std::filesystem::path dir_;
  ReportBundle& bundle_;
};

std::string undefined_or(const std::optional<double>& v, std::string_view name) {
  return v ? format_metric(name, *v) : "undefined";
}

nlohmann::json stats_json(const SelfPlayStats& s) {
  return nlohmann::json{{"dialogues", s.dialogues},
                        {"successes", s.successes},
                        {"errored", s.errored},
                        {"succ", rounded(s.success_rate, 1)},
                        {"turns", s.mean_turns ? rounded(*s.mean_turns, 2)
                                               : nlohmann::json("undefined")},
                        {"coh", optional_number(s.coherence, 2)}};
}

}  // namespace

int metric_decimals(std::string_view name) {
  if (name == "sl_ratio") return 4;
  if (name == "turns" || name == "coh") return 2;
  return 1;
}

std::string format_metric(std::string_view name, double value) {
  return fixed(value, metric_decimals(name));
}

ReportBundle emit_report(const std::filesystem::path& out_dir, const ReportInputs& in) {
  std::size_t total = 0;
  for (const auto& m : in.metrics) total += m.samples;
  if (in.selfplay) total += in.selfplay->overall.dialogues;
  if (total == 0) throw ValidationError("run has zero samples; no report written");

  std::filesystem::create_directories(out_dir);
  ReportBundle bundle;
  Writer w(out_dir, bundle);

  // manifest.json
  nlohmann::json manifest;
  std::vector<int> bleu_ns;
  for (const auto& m : in.metrics) {
    if (std::find(bleu_ns.begin(), bleu_ns.end(), m.bleu_n) == bleu_ns.end()) {
      bleu_ns.push_back(m.bleu_n);
    }
  }
  manifest["bleu_n"] = bleu_ns;
  manifest["bleu_smoothing"] = "add-one for orders >= 2 with zero matches";
  manifest["tokenizer"] = text::kTokenizerId;
  std::string embedding = in.embedding_model;
  if (embedding.empty() && in.selfplay) embedding = in.selfplay->embedding_model;
  for (const auto& m : in.metrics) {
    if (embedding.empty()) embedding = m.embedding_model;
  }
  manifest["embedding_model"] = embedding.empty() ? nlohmann::json(nullptr) : nlohmann::json(embedding);
  manifest["bertscore_rescaled"] = false;
  manifest["auc"] = "indicator AUC over parsed labels";
  manifest["meteor"] = "exact-match variant without stemming or synonyms";
  nlohmann::json providers = nlohmann::json::array();
  bool nonzero_temperature = false;
  for (const auto& p : in.providers) {
    providers.push_back({{"role", p.role},
                         {"kind", p.kind},
                         {"model_id", p.model_id},
                         {"temperature", p.temperature}});
    if (p.temperature != 0) nonzero_temperature = true;
  }
  manifest["providers"] = providers;
  manifest["non_reproducible_temperature"] = nonzero_temperature;
  if (in.selfplay) {
    manifest["selfplay"] = {
        {"turn_unit", "system utterances"},
        {"coherence_mode", in.selfplay->coherence_mode == CoherenceMode::kAllSystemTurns
                               ? "all system turns"
                               : "final system turn"},
        {"target_detection", "case-insensitive whole-word match"},
        {"user_simulator_stand_in", in.user_simulator_stand_in}};
  }
  w.write("manifest.json", manifest.dump(2) + "\n");

  // summary.json
  nlohmann::json summary;
  summary["run"] = in.run_metadata;
  nlohmann::json runs = nlohmann::json::array();
  std::vector<std::string> warnings;
  for (const auto& m : in.metrics) {
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& v : m.metrics) {
      values[v.name] = optional_number(v.value, metric_decimals(v.name));
      counts[v.name] = v.count;
    }
    runs.push_back({{"task", to_token(m.task)},
                    {"scheme", to_token(m.scheme)},
                    {"shots", m.shots},
                    {"dataset", m.dataset},
                    {"samples", m.samples},
                    {"generation_errors", m.generation_errors},
                    {"metrics", values},
                    {"counts", counts}});
    warnings.insert(warnings.end(), m.warnings.begin(), m.warnings.end());
  }
  summary["results"] = runs;
  if (in.taxonomy) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [ds, row] : *in.taxonomy) {
      nlohmann::json r = nlohmann::json::object();
      for (const auto& [c, pct] : row) r[std::string(to_token(c))] = rounded(pct, 1);
      t[ds] = r;
    }
    summary["error_taxonomy"] = t;
  }
  if (in.act_confusion) {
    const auto& c = *in.act_confusion;
    nlohmann::json rates = nlohmann::json::array();
    for (const auto& row : c.rates) {
      nlohmann::json r = nlohmann::json::array();
      for (double v : row) r.push_back(rounded(v, 4));
      rates.push_back(r);
    }
    summary["act_confusion"] = {{"labels", c.labels},
                                {"counts", c.counts},
                                {"rates", rates},
                                {"zero_support", c.zero_support},
                                {"unparsed", c.unparsed}};
  }
  if (in.strategies) {
    const auto& d = *in.strategies;
    nlohmann::json rows = nlohmann::json::object();
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      rows[d.labels[i]] = {{"predicted", rounded(100.0 * d.predicted[i], 1)},
                           {"reference", rounded(100.0 * d.reference[i], 1)}};
    }
    summary["strategy_distribution"] = rows;
    warnings.insert(warnings.end(), d.warnings.begin(), d.warnings.end());
  }
  if (in.selfplay) {
    nlohmann::json sp{{"overall", stats_json(in.selfplay->overall)}};
    for (const auto& [d, s] : in.selfplay->by_difficulty) sp[d] = stats_json(s);
    summary["selfplay"] = sp;
  }
  summary["warnings"] = warnings;
  w.write("summary.json", summary.dump(2) + "\n");

  // Tables.
  {
    std::ostringstream csv;
    csv << "task,scheme,shots,dataset,metric,value,count\n";
    for (const auto& m : in.metrics) {
      for (const auto& v : m.metrics) {
        csv << to_token(m.task) << ',' << to_token(m.scheme) << ',' << m.shots << ','
            << csv_field(m.dataset) << ',' << v.name << ','
            << (v.value ? format_metric(v.name, *v.value) : "") << ',' << v.count << '\n';
      }
    }
    w.write("metrics.csv", csv.str());
  }
  if (in.taxonomy) {
    std::ostringstream csv;
    csv << "dataset,category,percentage\n";
    for (const auto& [ds, row] : *in.taxonomy) {
      for (ErrorCategory c : kAllErrorCategories) {
        auto it = row.find(c);
        csv << csv_field(ds) << ',' << csv_field(std::string(display_name(c))) << ','
            << fixed(it == row.end() ? 0.0 : it->second, 1) << '\n';
      }
    }
    w.write("error_taxonomy.csv", csv.str());
  }
  if (in.act_confusion) {
    const auto& c = *in.act_confusion;
    std::ostringstream csv;
    csv << "gold";
    for (const auto& l : c.labels) csv << ',' << csv_field(l);
    csv << ",zero_support\n";
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      csv << csv_field(c.labels[i]);
      for (double v : c.rates[i]) csv << ',' << fixed(v, 4);
      csv << ',' << (c.zero_support[i] ? "true" : "false") << '\n';
    }
    w.write("act_confusion.csv", csv.str());
  }
  if (in.strategies) {
    const auto& d = *in.strategies;
    std::ostringstream csv;
    csv << "strategy,predicted,reference\n";
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      csv << csv_field(d.labels[i]) << ',' << fixed(100.0 * d.predicted[i], 1) << ','
          << fixed(100.0 * d.reference[i], 1) << '\n';
    }
    w.write("strategy_distribution.csv", csv.str());
  }
  if (in.selfplay) {
    std::ostringstream csv;
    csv << "stratum,dialogues,successes,errored,succ,turns,coh\n";
    auto row = [&](const std::string& name, const SelfPlayStats& s) {
      csv << name << ',' << s.dialogues << ',' << s.successes << ',' << s.errored << ','
          << fixed(s.success_rate, 1) << ',' << undefined_or(s.mean_turns, "turns") << ','
          << (s.coherence ? fixed(*s.coherence, 2) : "") << '\n';
    };
    row("overall", in.selfplay->overall);
    for (const auto& [d, s] : in.selfplay->by_difficulty) row(d, s);
    w.write("selfplay.csv", csv.str());
  }

  // summary.txt
  std::ostringstream txt;
  for (const auto& m : in.metrics) {
    txt << to_token(m.task) << " / " << to_token(m.scheme) << " / " << m.shots << "-shot";
    if (!m.dataset.empty()) txt << " / " << m.dataset;
    txt << "  (" << m.samples << " samples, " << m.generation_errors
        << " generation errors)\n";
    for (const auto& v : m.metrics) {
      txt << "  " << v.name << ": " << undefined_or(v.value, v.name) << "  [n=" << v.count
          << "]\n";
    }
  }
  if (in.taxonomy) {
    txt << "error taxonomy (% of annotated failures)\n";
    for (const auto& [ds, row] : *in.taxonomy) {
      txt << "  " << ds << '\n';
      for (ErrorCategory c : kAllErrorCategories) {
        auto it = row.find(c);
        txt << "    " << display_name(c) << ": " << fixed(it == row.end() ? 0 : it->second, 1)
            << "%\n";
      }
    }
  }
  if (in.selfplay) {
    auto line = [&](const std::string& name, const SelfPlayStats& s) {
      txt << "  " << name << ": Succ " << fixed(s.success_rate, 1) << "%, Turns "
          << undefined_or(s.mean_turns, "turns") << ", Coh "
          << (s.coherence ? fixed(*s.coherence, 2) : "undefined") << "  [" << s.dialogues
          << " dialogues]\n";
    };
    txt << "self-play\n";
    line("overall", in.selfplay->overall);
    for (const auto& [d, s] : in.selfplay->by_difficulty) line(d, s);
    if (in.user_simulator_stand_in) {
      txt << "  note: simulated user driven by the shipped stand-in prompt\n";
    }
  }
  if (nonzero_temperature) {
    txt << "note: a provider ran with temperature > 0; results are not reproducible\n";
  }
  for (const auto& wmsg : warnings) txt << "warning: " << wmsg << '\n';
  w.write("summary.txt", txt.str());
  return bundle;
}

}  // namespace proeval
