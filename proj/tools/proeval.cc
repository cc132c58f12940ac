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

// proeval: command-line front end for ingestion, runs, self-play, scoring,
// triage and reports.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "proeval/analysis.h"
#include "proeval/embedding.h"
#include "proeval/errors.h"
#include "proeval/gateway.h"
#include "proeval/ingest.h"
#include "proeval/metrics.h"
#include "proeval/prompt.h"
#include "proeval/report.h"
#include "proeval/runner.h"
#include "proeval/sample_io.h"
#include "proeval/selfplay.h"

namespace fs = std::filesystem;
using namespace proeval;

namespace {

struct Globals {
  std::string data_dir;
};

fs::path data_dir(const Globals& g) {
  return g.data_dir.empty() ? default_data_dir() : fs::path(g.data_dir);
}

VocabularyStore load_vocab(const Globals& g) {
  return VocabularyStore::load(data_dir(g) / "vocab");
}

PromptLibrary load_library(const Globals& g) {
  return PromptLibrary::load(data_dir(g) / "templates", load_vocab(g));
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// Provider config file; relative script paths resolve against the file.
ProviderConfig load_provider(const fs::path& path) {
  ProviderConfig cfg = provider_config_from_json(read_json(path));
  if (!cfg.script_path.empty() && fs::path(cfg.script_path).is_relative()) {
    cfg.script_path = (path.parent_path() / cfg.script_path).string();
  }
  return cfg;
}

std::unique_ptr<LlmGateway> make_gateway(const ProviderConfig& cfg, const std::string& cache_dir,
                                         int workers) {
  std::optional<fs::path> cache;
  if (!cache_dir.empty()) cache = fs::path(cache_dir);
  return std::make_unique<LlmGateway>(cfg, make_backend(cfg, nullptr), cache, workers);
}

// Sentence embeddings: "hashing" or an embeddings provider config file.
std::unique_ptr<EmbeddingProvider> make_embedding(const std::string& spec) {
  if (spec.empty() || spec == "hashing") return std::make_unique<HashingEmbedding>();
  return std::make_unique<HttpEmbeddingProvider>(load_provider(spec), nullptr);
}

MetricReport score_file(const fs::path& run_path, int bleu_n, const VocabularyStore& vocab,
                        std::vector<RunRecord>* records_out = nullptr) {
  auto records = read_run_jsonl(run_path);
  HashingEmbedding tokens;
  ScoreOptions opts;
  opts.bleu_n = bleu_n;
  opts.token_embedding = &tokens;
  MetricReport rep = score_run(records, opts, vocab);
  if (records_out) *records_out = std::move(records);
  return rep;
}

nlohmann::json metric_json(const MetricReport& m, const std::vector<std::string>& only) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& v : m.metrics) {
    if (!only.empty() && std::find(only.begin(), only.end(), v.name) == only.end()) continue;
    values[v.name] = v.value ? nlohmann::json(std::stod(format_metric(v.name, *v.value)))
                             : nlohmann::json(nullptr);
  }
  return nlohmann::json{{"task", to_token(m.task)},     {"scheme", to_token(m.scheme)},
                        {"shots", m.shots},             {"dataset", m.dataset},
                        {"samples", m.samples},         {"generation_errors", m.generation_errors},
                        {"bleu_n", m.bleu_n},           {"metrics", values},
                        {"warnings", m.warnings}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate proactive dialogue behaviour of chat-completion models"};
  app.set_config("--config", "", "TOML config file; [section] per subcommand");
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir,
                 "Templates/vocabulary/adapters directory (default: $PROEVAL_DATA_DIR or "
                 "the build-time location)");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Convert a dataset release into unified JSONL");
  std::string in_dataset, in_source, in_split = "test", in_out, in_role = "seller",
                                     in_mapping, in_stats;
  ingest->add_option("--dataset", in_dataset,
                     "abg_coqa | pacific | otters | tgconv | craigslist")->required();
  ingest->add_option("--source", in_source, "Release file or directory")->required();
  ingest->add_option("--split", in_split, "test | dev");
  ingest->add_option("--system-role", in_role, "Negotiation side the system plays");
  ingest->add_option("--mapping", in_mapping, "Field mapping JSON");
  ingest->add_option("--out", in_out, "Output JSONL")->required();
  ingest->add_option("--stats", in_stats, "Also write dataset statistics JSON here");

  // run
  auto* run = app.add_subcommand("run", "Prompt a model over samples and record replies");
  std::string r_task, r_scheme = "standard", r_samples, r_provider, r_out, r_cache, r_demo,
                      r_log;
  int r_shots = 0, r_workers = LlmGateway::kDefaultMaxInFlight, r_max_tokens = 0;
  std::size_t r_max_chars = 0, r_limit = 0;
  run->add_option("--task", r_task, "clarification | target_guided | negotiation")->required();
  run->add_option("--scheme", r_scheme, "standard | proactive | procot");
  run->add_option("--shots", r_shots, "0 or 1");
  run->add_option("--dataset", r_samples, "Unified samples JSONL (from ingest)")->required();
  run->add_option("--provider-config", r_provider, "Provider JSON")->required();
  run->add_option("--out", r_out, "Run records JSONL")->required();
  run->add_option("--cache-dir", r_cache, "Completion cache directory");
  run->add_option("--demo-id", r_demo, "Demonstration for one-shot prompts");
  run->add_option("--workers", r_workers, "Concurrent requests");
  run->add_option("--max-new-tokens", r_max_tokens, "Override (default 128, negotiation 256)");
  run->add_option("--max-prompt-chars", r_max_chars, "Truncate history beyond this length");
  run->add_option("--limit", r_limit, "Only the first N samples");
  run->add_option("--log", r_log, "Timing log JSONL (default: <out>.log.jsonl)");

  // selfplay
  auto* sp = app.add_subcommand("selfplay", "Dialogue-level target-guided self-play");
  std::string sp_samples, sp_system, sp_user, sp_out, sp_cache, sp_scheme = "standard",
                                                             sp_embedding = "hashing",
                                                             sp_coh = "all";
  int sp_shots = 0, sp_turns = 8, sp_workers = LlmGateway::kDefaultMaxInFlight;
  sp->add_option("--samples", sp_samples, "Target-guided samples JSONL")->required();
  sp->add_option("--system-provider", sp_system, "Provider JSON for the system")->required();
  sp->add_option("--user-provider", sp_user, "Provider JSON for the simulated user")
      ->required();
  sp->add_option("--scheme", sp_scheme, "standard | proactive | procot");
  sp->add_option("--shots", sp_shots, "0 or 1");
  sp->add_option("--max-turns", sp_turns, "System turns before giving up");
  sp->add_option("--cache-dir", sp_cache, "Completion cache directory");
  sp->add_option("--embedding", sp_embedding, "hashing | embeddings provider JSON");
  sp->add_option("--coherence", sp_coh, "all | final");
  sp->add_option("--workers", sp_workers, "Concurrent dialogues");
  sp->add_option("--out", sp_out, "Output directory")->required();

  // score
  auto* score = app.add_subcommand("score", "Score a run");
  std::string s_run, s_metrics, s_out;
  int s_bleu = 0;
  score->add_option("--run", s_run, "Run records JSONL")->required();
  score->add_option("--metrics", s_metrics, "Comma-separated metric names (default: all)");
  score->add_option("--bleu-n", s_bleu, "BLEU order (default per dataset)");
  score->add_option("--out", s_out, "Write JSON here instead of stdout");

  // triage
  auto* triage = app.add_subcommand("triage", "Categorise clarification failures");
  std::string t_run, t_ann, t_out;
  std::size_t t_sample = 0;
  std::uint64_t t_seed = 0;
  triage->add_option("--run", t_run, "Clarification run JSONL")->required();
  triage->add_option("--annotations", t_ann, "Human annotations CSV (sample_id,category)");
  triage->add_option("--sample", t_sample, "Draw this many failure cases for annotation");
  triage->add_option("--seed", t_seed, "Seed for --sample");
  triage->add_option("--out", t_out, "Write JSON here instead of stdout");

  // report
  auto* report = app.add_subcommand("report", "Write a report bundle for one or more runs");
  std::vector<std::string> rp_runs;
  std::string rp_out, rp_ann, rp_analysis;
  int rp_bleu = 0;
  report->add_option("--run", rp_runs, "Run records JSONL (repeatable)")->required();
  report->add_option("--out-dir", rp_out, "Output directory")->required();
  report->add_option("--annotations", rp_ann, "Human annotations CSV for triage");
  report->add_option("--analysis-run", rp_analysis,
                     "Run used for confusion/distribution/taxonomy (default: first)");
  report->add_option("--bleu-n", rp_bleu, "BLEU order (default per dataset)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const VocabularyStore vocab = load_vocab(g);
      const FieldMapping mapping = FieldMapping::load(
          in_mapping.empty() ? data_dir(g) / "adapters" / "field_mapping.json"
                             : fs::path(in_mapping));
      DatasetAdapterSpec spec;
      spec.dataset = parse_dataset_kind(in_dataset);
      spec.source_path = in_source;
      spec.split = in_split;
      spec.negotiation_system_role = parse_role(in_role);
      std::vector<std::string> warnings;
      const auto samples = load_dataset(spec, mapping, vocab, &warnings);
      write_samples_jsonl(in_out, samples);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      const nlohmann::json stats = to_json(dataset_stats(samples));
      if (!in_stats.empty()) write_json(in_stats, stats);
      std::cout << stats.dump(2) << '\n';
    } else if (*run) {
      const PromptLibrary lib = load_library(g);
      auto samples = read_samples_jsonl(r_samples);
      if (r_limit > 0 && samples.size() > r_limit) samples.resize(r_limit);
      RunOptions opts;
      opts.task = parse_task_kind(r_task);
      opts.scheme = parse_scheme_kind(r_scheme);
      opts.shots = r_shots;
      if (!r_demo.empty()) opts.demo_id = r_demo;
      opts.max_prompt_chars = r_max_chars;
      opts.workers = r_workers;
      ProviderConfig cfg = load_provider(r_provider);
      if (r_max_tokens > 0) {
        cfg.max_new_tokens = r_max_tokens;
      } else if (!read_json(r_provider).contains("max_new_tokens")) {
        cfg.max_new_tokens = default_max_new_tokens(opts.task);
      }
      auto gateway = make_gateway(cfg, r_cache, r_workers);
      const RunResult res = run_eval(samples, opts, lib, *gateway);
      write_run_jsonl(r_out, res.records);
      write_run_log(r_log.empty() ? fs::path(r_out + ".log.jsonl") : fs::path(r_log), res.log);
      std::size_t errors = 0;
      for (const auto& rec : res.records) errors += rec.parsed.parsed() ? 0 : 1;
      std::cerr << res.records.size() << " records, " << errors << " generation errors, "
                << gateway->backend_calls() << " provider calls\n";
    } else if (*sp) {
      const PromptLibrary lib = load_library(g);
      const auto samples = read_samples_jsonl(sp_samples);
      const SchemeKind scheme = parse_scheme_kind(sp_scheme);
      std::vector<SelfPlayConfig> cfgs;
      for (const auto& s : samples) {
        cfgs.push_back(selfplay_config_for(s, scheme, sp_shots, sp_turns));
      }
      ProviderConfig sys_cfg = load_provider(sp_system);
      ProviderConfig usr_cfg = load_provider(sp_user);
      auto system = make_gateway(sys_cfg, sp_cache, sp_workers);
      auto user = make_gateway(usr_cfg, sp_cache, sp_workers);
      const auto transcripts = run_selfplay_batch(cfgs, lib, *system, *user, sp_workers);
      for (std::size_t i = 0; i < transcripts.size(); ++i) {
        write_transcript(fs::path(sp_out) / "transcripts", transcripts[i], cfgs[i]);
      }
      auto embedding = make_embedding(sp_embedding);
      ReportInputs in;
      in.selfplay = aggregate_selfplay(transcripts, *embedding,
                                       sp_coh == "final" ? CoherenceMode::kFinalTurn
                                                         : CoherenceMode::kAllSystemTurns);
      in.providers = {{"system", sys_cfg.kind, sys_cfg.model_id, sys_cfg.temperature},
                      {"user", usr_cfg.kind, usr_cfg.model_id, usr_cfg.temperature}};
      in.user_simulator_stand_in = true;
      in.run_metadata = {{"kind", "selfplay"},
                         {"scheme", to_token(scheme)},
                         {"shots", sp_shots},
                         {"max_turns", sp_turns},
                         {"dialogues", transcripts.size()}};
      emit_report(fs::path(sp_out) / "report", in);
      std::cout << fs::path(sp_out) / "report" / "summary.txt" << '\n';
    } else if (*score) {
      const VocabularyStore vocab = load_vocab(g);
      const MetricReport rep = score_file(s_run, s_bleu, vocab);
      std::vector<std::string> only;
      if (!s_metrics.empty()) only = CLI::detail::split(s_metrics, ',');
      const nlohmann::json j = metric_json(rep, only);
      if (s_out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        write_json(s_out, j);
      }
    } else if (*triage) {
      const auto records = read_run_jsonl(t_run);
      const TriageResult tr = auto_triage(records);
      std::vector<AnnotationRecord> anns = tr.annotations;
      if (!t_ann.empty()) anns = merge_annotations(tr, load_annotations(t_ann));
      nlohmann::json j;
      nlohmann::json list = nlohmann::json::array();
      for (const auto& a : anns) {
        list.push_back({{"sample_id", a.sample_id},
                        {"category", to_token(a.category)},
                        {"source", a.source == AnnotationSource::kHuman ? "human" : "automatic"},
                        {"dataset", a.dataset}});
      }
      j["annotations"] = list;
      j["unresolved"] = tr.unresolved;
      if (!anns.empty()) {
        nlohmann::json table = nlohmann::json::object();
        for (const auto& [ds, row] : taxonomy_table(anns)) {
          for (const auto& [c, pct] : row) {
            table[ds][std::string(to_token(c))] = std::stod(format_metric("pct", pct));
          }
        }
        j["taxonomy"] = table;
      }
      if (t_sample > 0) {
        std::vector<std::string> ids;
        for (const auto& a : anns) ids.push_back(a.sample_id);
        ids.insert(ids.end(), tr.unresolved.begin(), tr.unresolved.end());
        j["sampled"] = sample_error_cases(ids, t_sample, t_seed);
      }
      if (t_out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        write_json(t_out, j);
      }
    } else if (*report) {
      const VocabularyStore vocab = load_vocab(g);
      ReportInputs in;
      nlohmann::json runs = nlohmann::json::array();
      std::vector<RunRecord> analysis_records;
      const std::string analysis_path = rp_analysis.empty() ? rp_runs.front() : rp_analysis;
      for (const auto& path : rp_runs) {
        std::vector<RunRecord> records;
        in.metrics.push_back(score_file(path, rp_bleu, vocab, &records));
        if (!records.empty()) {
          const auto& r0 = records.front();
          runs.push_back({{"path", fs::path(path).filename().string()},
                          {"records", records.size()},
                          {"model_id", r0.model_id}});
          const ProviderSummary p{"system", r0.provider_kind, r0.model_id, r0.temperature};
          bool seen = false;
          for (const auto& q : in.providers) seen |= q.model_id == p.model_id && q.kind == p.kind;
          if (!seen) in.providers.push_back(p);
        }
        if (path == analysis_path) analysis_records = records;
      }
      if (!rp_analysis.empty() && analysis_records.empty()) {
        analysis_records = read_run_jsonl(rp_analysis);
      }
      in.run_metadata = {{"runs", runs}};
      in.embedding_model = HashingEmbedding().model_id();
      if (!analysis_records.empty() && analysis_records.front().scheme != SchemeKind::kStandard) {
        const TaskKind task = analysis_records.front().task;
        if (task == TaskKind::kClarification) {
          const TriageResult tr = auto_triage(analysis_records);
          auto anns = rp_ann.empty() ? tr.annotations
                                     : merge_annotations(tr, load_annotations(rp_ann));
          if (!anns.empty()) in.taxonomy = taxonomy_table(anns);
        }
        if (task != TaskKind::kTargetGuided) {
          in.act_confusion = act_confusion(analysis_records, vocab);
        }
        if (task == TaskKind::kNegotiation) {
          in.strategies = strategy_distribution(analysis_records, vocab);
        }
      }
      const ReportBundle b = emit_report(rp_out, in);
      for (const auto& f : b.files) std::cout << f.string() << '\n';
    }
  } catch (const AuthError& e) {
    std::cerr << "authentication error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
