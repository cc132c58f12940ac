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

#include "proeval/runner.h"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include "proeval/digest.h"
#include "proeval/errors.h"
#include "proeval/metrics.h"
#include "proeval/parser.h"
#include "proeval/sample_io.h"
#include "proeval/text.h"

namespace proeval {

void to_json(nlohmann::json& j, const RunRecord& r) {
  j = nlohmann::json{{"sample_id", r.sample_id},
                     {"task", to_token(r.task)},
                     {"scheme", to_token(r.scheme)},
                     {"shots", r.shots},
                     {"demo_ids", r.demo_ids},
                     {"prompt", r.prompt},
                     {"prompt_digest", r.prompt_digest},
                     {"raw_text", r.raw_text},
                     {"parsed", r.parsed},
                     {"sample", r.sample},
                     {"provider",
                      {{"kind", r.provider_kind},
                       {"model_id", r.model_id},
                       {"temperature", r.temperature},
                       {"max_new_tokens", r.max_new_tokens}}},
                     {"truncated_turns", r.truncated_turns}};
  if (r.provider_error) j["provider_error"] = *r.provider_error;
}

void from_json(const nlohmann::json& j, RunRecord& r) {
  r.sample_id = j.at("sample_id").get<std::string>();
  r.task = parse_task_kind(j.at("task").get<std::string>());
  r.scheme = parse_scheme_kind(j.at("scheme").get<std::string>());
  r.shots = j.at("shots").get<int>();
  r.demo_ids = j.value("demo_ids", std::vector<std::string>{});
  r.prompt = j.at("prompt").get<std::string>();
  r.prompt_digest = j.at("prompt_digest").get<std::string>();
  r.raw_text = j.at("raw_text").get<std::string>();
  r.parsed = j.at("parsed").get<ParsedOutput>();
  r.sample = j.at("sample").get<EvalSample>();
  const auto& p = j.at("provider");
  r.provider_kind = p.value("kind", std::string());
  r.model_id = p.value("model_id", std::string());
  r.temperature = p.value("temperature", 0.0);
  r.max_new_tokens = p.value("max_new_tokens", 0);
  r.truncated_turns = j.value("truncated_turns", 0);
  if (j.contains("provider_error")) r.provider_error = j.at("provider_error").get<std::string>();
}

namespace {

const Demonstration* pick_demo(const EvalSample& s, const RunOptions& opts,
                               const PromptLibrary& lib) {
  if (opts.shots == 0) return nullptr;
  if (opts.demo_id) return &lib.demo(s.task, *opts.demo_id);
  for (const auto& d : lib.demo_pool(s.task)) {
    if (d.sample.id != s.id && !(d.sample == s)) return &d;
  }
  throw ConfigError("no usable demonstration for sample '" + s.id + "'");
}

}  // namespace

PromptBundle build_prompt(const EvalSample& sample, const RunOptions& opts,
                          const PromptLibrary& lib, int* truncated_turns) {
  const Demonstration* demo = pick_demo(sample, opts, lib);
  EvalSample s = sample;
  int dropped = 0;
  PromptBundle b = lib.assemble_prompt(s, opts.scheme, opts.shots, demo);
  // Clarification keeps its final question; every task keeps one turn.
  const std::size_t keep = 1;
  while (opts.max_prompt_chars > 0 && b.text.size() > opts.max_prompt_chars &&
         s.history.size() > keep) {
    s.history.erase(s.history.begin());
    ++dropped;
    b = lib.assemble_prompt(s, opts.scheme, opts.shots, demo);
  }
  if (truncated_turns) *truncated_turns = dropped;
  return b;
}

RunResult run_eval(const std::vector<EvalSample>& samples, const RunOptions& opts,
                   const PromptLibrary& lib, LlmGateway& gateway) {
  for (const auto& s : samples) {
    if (s.task != opts.task) {
      throw ConfigError("sample '" + s.id + "' is " + std::string(to_token(s.task)) +
                        ", run is " + std::string(to_token(opts.task)));
    }
  }
  RunResult result;
  result.records.resize(samples.size());
  result.log.resize(samples.size());
  const ProviderConfig& cfg = gateway.config();

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      {
        std::lock_guard lock(failure_mu);
        if (failure) return;
      }
      try {
        const EvalSample& s = samples[i];
        RunRecord& r = result.records[i];
        RunLogEntry& log = result.log[i];
        r.sample_id = s.id;
        r.task = s.task;
        r.scheme = opts.scheme;
        r.shots = opts.shots;
        r.sample = s;
        r.provider_kind = cfg.kind;
        r.model_id = cfg.model_id;
        r.temperature = cfg.temperature;
        r.max_new_tokens = cfg.max_new_tokens;
        PromptBundle b = build_prompt(s, opts, lib, &r.truncated_turns);
        r.prompt = b.text;
        r.demo_ids = b.demo_ids;
        log.sample_id = s.id;
        try {
          CompletionRecord c = gateway.complete(b);
          r.prompt_digest = c.prompt_digest;
          r.raw_text = c.raw_text;
          r.parsed = parse_output(s.task, opts.scheme, c.raw_text, lib.vocab());
          log.latency_ms = c.latency_ms;
          log.cached = c.cached;
        } catch (const ProviderError& e) {
          r.provider_error = e.what();
        } catch (const TimeoutError& e) {
          r.provider_error = e.what();
        }
        if (r.provider_error) {
          r.prompt_digest = prompt_digest(cfg.model_id, b.text, cfg.temperature,
                                          cfg.max_new_tokens);
          r.parsed = ParsedOutput::generation_error("provider error", "");
          log.error = r.provider_error;
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int n = std::max(1, std::min<int>(opts.workers, static_cast<int>(samples.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return result;
}

void write_run_jsonl(const std::filesystem::path& path, const std::vector<RunRecord>& records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& r : records) out << nlohmann::json(r).dump() << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<RunRecord> read_run_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<RunRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<RunRecord>());
    } catch (const std::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_run_log(const std::filesystem::path& path, const std::vector<RunLogEntry>& log) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& e : log) {
    nlohmann::json j{{"sample_id", e.sample_id}, {"latency_ms", e.latency_ms},
                     {"cached", e.cached}};
    if (e.error) j["error"] = *e.error;
    out << j.dump() << '\n';
  }
}

int default_bleu_n(std::string_view dataset) { return dataset == "abg_coqa" ? 1 : 2; }

const MetricValue* MetricReport::find(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::optional<std::string> gold_act_of(const EvalSample& s) {
  if (s.gold.gold_act) return s.gold.gold_act;
  if (s.task == TaskKind::kClarification && s.gold.ambiguity_label) {
    return std::string(*s.gold.ambiguity_label ? kActAskClarification : kActDirectAnswer);
  }
  return std::nullopt;
}

std::optional<Money> bargain_price(std::string_view response) {
  auto prices = extract_prices(response);
  if (prices.empty()) return std::nullopt;
  return prices.back();
}

namespace {

class Collector {
 public:
  explicit Collector(MetricReport& r) : r_(r) {}

  void add(std::string name, std::optional<double> value, std::size_t count) {
    r_.metrics.push_back({std::move(name), value, count});
  }

  // Mean of per-sample values, scaled; unset when there are none.
  void mean(std::string name, const std::vector<double>& values, double scale = 1.0) {
    if (values.empty()) {
      add(std::move(name), std::nullopt, 0);
      return;
    }
    double s = 0;
    for (double v : values) s += v;
    add(std::move(name), scale * s / static_cast<double>(values.size()), values.size());
  }

  template <typename Fn>
  void guarded(const std::string& name, std::size_t count, Fn&& fn) {
    try {
      add(name, fn(), count);
    } catch (const ValidationError& e) {
      r_.warnings.push_back(name + ": " + e.what());
      add(name, std::nullopt, count);
    }
  }

 private:
  MetricReport& r_;
};

void score_clarification(const std::vector<RunRecord>& rs, MetricReport& rep, Collector& c) {
  if (rep.scheme != SchemeKind::kStandard) {
    std::vector<BinaryPrediction> pairs;
    for (const auto& r : rs) {
      if (!r.sample.gold.ambiguity_label) continue;
      const bool asks = r.parsed.parsed() && r.parsed.act == std::string(kActAskClarification);
      pairs.push_back({r.sample_id, *r.sample.gold.ambiguity_label, asks});
    }
    if (!pairs.empty()) {
      const Prf p = precision_recall_f1(pairs);
      c.add("need_precision", p.precision, pairs.size());
      c.add("need_recall", p.recall, pairs.size());
      c.add("need_f1", p.f1, pairs.size());
    }
  }
  std::vector<double> bl, r2;
  for (const auto& r : rs) {
    const auto& g = r.sample.gold;
    if (!g.ambiguity_label || !*g.ambiguity_label || !g.reference_response) continue;
    bl.push_back(bleu(r.parsed.response, {*g.reference_response}, rep.bleu_n));
    r2.push_back(rouge_n_f1(r.parsed.response, *g.reference_response, 2));
  }
  c.mean("bleu_" + std::to_string(rep.bleu_n), bl, 100.0);
  c.mean("rouge_2", r2, 100.0);
}

void score_target(const std::vector<RunRecord>& rs, MetricReport& rep, Collector& c) {
  std::vector<double> bl, met, rl, h1, h3;
  for (const auto& r : rs) {
    const auto& g = r.sample.gold;
    if (g.reference_response) {
      bl.push_back(bleu(r.parsed.response, {*g.reference_response}, rep.bleu_n));
      met.push_back(meteor_lite(r.parsed.response, *g.reference_response));
      rl.push_back(rouge_l_f1(r.parsed.response, *g.reference_response));
    }
    if (rep.scheme != SchemeKind::kStandard && g.gold_next_topics) {
      const auto pred = r.parsed.next_topics.value_or(std::vector<std::string>{});
      h1.push_back(hits_at_k(pred, *g.gold_next_topics, 1));
      h3.push_back(hits_at_k(pred, *g.gold_next_topics, 3));
    }
  }
  c.mean("bleu_" + std::to_string(rep.bleu_n), bl, 100.0);
  c.mean("meteor", met, 100.0);
  c.mean("rouge_l", rl, 100.0);
  if (rep.scheme != SchemeKind::kStandard) {
    c.mean("hits_at_1", h1, 100.0);
    c.mean("hits_at_3", h3, 100.0);
  }
}

void score_negotiation(const std::vector<RunRecord>& rs, const ScoreOptions& opts,
                       const VocabularyStore& vocab, MetricReport& rep, Collector& c) {
  if (rep.scheme != SchemeKind::kStandard) {
    const auto strategy_vocab = vocab.strategies().tokens();
    const auto act_vocab = vocab.acts(TaskKind::kNegotiation).tokens();
    std::vector<LabelSetPrediction> strat, acts;
    for (const auto& r : rs) {
      const auto& g = r.sample.gold;
      if (g.gold_strategies) {
        strat.push_back({*g.gold_strategies,
                         r.parsed.parsed() ? r.parsed.strategies.value_or(
                                                 std::vector<std::string>{})
                                           : std::vector<std::string>{}});
      }
      if (g.gold_act) {
        std::vector<std::string> pred;
        if (r.parsed.parsed() && r.parsed.act) pred.push_back(*r.parsed.act);
        acts.push_back({{*g.gold_act}, pred});
      }
    }
    for (Average a : {Average::kMacro, Average::kMicro, Average::kWeighted}) {
      const std::string suffix(to_token(a));
      if (strat.empty()) {
        c.add("strategy_f1_" + suffix, std::nullopt, 0);
      } else {
        c.add("strategy_f1_" + suffix, multilabel_f1(strat, strategy_vocab, a), strat.size());
      }
    }
    for (Average a : {Average::kMacro, Average::kMicro, Average::kWeighted}) {
      c.guarded("strategy_auc_" + std::string(to_token(a)), strat.size(), [&] {
        if (strat.empty()) throw ValidationError("no strategy annotations");
        return 100.0 * indicator_auc(strat, strategy_vocab, a).value;
      });
    }
    for (Average a : {Average::kMacro, Average::kMicro, Average::kWeighted}) {
      const std::string suffix(to_token(a));
      if (acts.empty()) {
        c.add("act_f1_" + suffix, std::nullopt, 0);
      } else {
        c.add("act_f1_" + suffix, multilabel_f1(acts, act_vocab, a), acts.size());
      }
    }
    for (Average a : {Average::kMacro, Average::kWeighted}) {
      c.guarded("act_auc_" + std::string(to_token(a)), acts.size(), [&] {
        if (acts.empty()) throw ValidationError("no act annotations");
        return 100.0 * indicator_auc(acts, act_vocab, a).value;
      });
    }
  }
  std::vector<double> bl, bp, br, bf, sl;
  for (const auto& r : rs) {
    const auto& g = r.sample.gold;
    if (g.reference_response) {
      bl.push_back(bleu(r.parsed.response, {*g.reference_response}, rep.bleu_n));
      if (opts.token_embedding && !text::tokenize(r.parsed.response).empty()) {
        const Prf p = bertscore(r.parsed.response, *g.reference_response, *opts.token_embedding);
        bp.push_back(p.precision);
        br.push_back(p.recall);
        bf.push_back(p.f1);
      }
    }
    if (r.sample.background.scenario) {
      if (auto price = bargain_price(r.parsed.response)) {
        const auto& sc = *r.sample.background.scenario;
        sl.push_back(sl_ratio(sc.listed_price, sc.buyer_target, *price));
      }
    }
  }
  c.mean("bleu_" + std::to_string(rep.bleu_n), bl, 100.0);
  if (opts.token_embedding) {
    c.mean("bertscore_precision", bp);
    c.mean("bertscore_recall", br);
    c.mean("bertscore_f1", bf);
  }
  c.mean("sl_ratio", sl);
}

}  // namespace

MetricReport score_run(const std::vector<RunRecord>& records, const ScoreOptions& opts,
                       const VocabularyStore& vocab) {
  if (records.empty()) throw ValidationError("cannot score an empty run");
  MetricReport rep;
  const RunRecord& first = records.front();
  rep.task = first.task;
  rep.scheme = first.scheme;
  rep.shots = first.shots;
  rep.dataset = first.sample.source_dataset;
  for (const auto& r : records) {
    if (r.task != rep.task || r.scheme != rep.scheme || r.shots != rep.shots) {
      throw ValidationError("run mixes tasks, schemes or shot counts");
    }
    if (r.sample.source_dataset != rep.dataset) rep.dataset = "mixed";
    if (!r.parsed.parsed()) ++rep.generation_errors;
  }
  rep.samples = records.size();
  rep.bleu_n = opts.bleu_n > 0 ? opts.bleu_n : default_bleu_n(rep.dataset);
  if (opts.token_embedding) rep.embedding_model = opts.token_embedding->model_id();

  Collector c(rep);
  c.add("generation_error_rate",
        100.0 * static_cast<double>(rep.generation_errors) / static_cast<double>(rep.samples),
        rep.samples);
  switch (rep.task) {
    case TaskKind::kClarification: score_clarification(records, rep, c); break;
    case TaskKind::kTargetGuided: score_target(records, rep, c); break;
    case TaskKind::kNegotiation: score_negotiation(records, opts, vocab, rep, c); break;
  }
  return rep;
}

}  // namespace proeval
