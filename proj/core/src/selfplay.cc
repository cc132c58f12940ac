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

#include "proeval/selfplay.h"

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
namespace {

// Lowercase words with every ASCII punctuation character acting as a space.
std::vector<std::string> boundary_words(std::string_view s) {
  std::string spaced = text::to_lower_ascii(text::straighten_quotes(s));
  for (char& c : spaced) {
    if (text::is_ascii_punct(c)) c = ' ';
  }
  return text::split_whitespace(spaced);
}

std::string clean_user_reply(std::string_view raw) {
  std::string s(text::trim(text::straighten_quotes(raw)));
  const std::string lower = text::to_lower_ascii(s);
  for (std::string_view prefix : {"\"user\":", "user:"}) {
    if (lower.rfind(prefix, 0) == 0) {
      s = std::string(text::trim(std::string_view(s).substr(prefix.size())));
      break;
    }
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = std::string(text::trim(std::string_view(s).substr(1, s.size() - 2)));
  }
  return s;
}

}  // namespace

bool detect_target(std::string_view response, std::string_view target) {
  const auto words = boundary_words(response);
  const auto needle = boundary_words(target);
  if (needle.empty() || words.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= words.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), words.begin() + i)) return true;
  }
  return false;
}

void SelfPlayConfig::validate() const {
  if (max_turns < 1) throw ConfigError("max_turns must be >= 1");
  if (text::trim(target).empty()) throw ConfigError("self-play target is empty");
  if (!difficulty.empty() && difficulty != "easy" && difficulty != "hard") {
    throw ConfigError("difficulty must be easy or hard");
  }
  if (shots != 0 && shots != 1) throw ConfigError("shots must be 0 or 1");
}

std::string SelfPlayConfig::digest() const {
  nlohmann::json j{{"sample_id", sample_id}, {"target", target},
                   {"difficulty", difficulty}, {"max_turns", max_turns},
                   {"scheme", to_token(scheme)}, {"shots", shots},
                   {"demo_id", demo_id.value_or("")}, {"seed_context", seed_context}};
  return sha256_hex(j.dump());
}

SelfPlayConfig selfplay_config_for(const EvalSample& s, SchemeKind scheme, int shots,
                                   int max_turns) {
  if (s.task != TaskKind::kTargetGuided || !s.background.target_topic) {
    throw ConfigError("sample '" + s.id + "' is not a target-guided sample");
  }
  SelfPlayConfig c;
  c.sample_id = s.id;
  c.target = *s.background.target_topic;
  c.difficulty = s.background.difficulty.value_or("");
  c.max_turns = max_turns;
  c.scheme = scheme;
  c.shots = shots;
  c.seed_context = s.history;
  return c;
}

void to_json(nlohmann::json& j, const Transcript& t) {
  j = nlohmann::json{{"sample_id", t.sample_id},
                     {"target", t.target},
                     {"difficulty", t.difficulty},
                     {"seed_context", t.seed_context},
                     {"turns", t.turns},
                     {"system_outputs", t.system_outputs},
                     {"success", t.success},
                     {"system_turns", t.system_turns},
                     {"secrecy_checks", t.secrecy_checks}};
  if (t.success_turn) j["success_turn"] = *t.success_turn;
  if (t.error) j["error"] = *t.error;
}

void from_json(const nlohmann::json& j, Transcript& t) {
  t.sample_id = j.at("sample_id").get<std::string>();
  t.target = j.at("target").get<std::string>();
  t.difficulty = j.value("difficulty", std::string());
  t.seed_context = j.value("seed_context", std::vector<DialogueTurn>{});
  t.turns = j.value("turns", std::vector<DialogueTurn>{});
  t.system_outputs = j.value("system_outputs", std::vector<ParsedOutput>{});
  t.success = j.value("success", false);
  t.system_turns = j.value("system_turns", 0);
  t.secrecy_checks = j.value("secrecy_checks", 0);
  if (j.contains("success_turn")) t.success_turn = j.at("success_turn").get<int>();
  if (j.contains("error")) t.error = j.at("error").get<std::string>();
}

Transcript run_selfplay(const SelfPlayConfig& cfg, const PromptLibrary& lib, LlmGateway& system,
                        LlmGateway& user) {
  cfg.validate();
  Transcript t;
  t.sample_id = cfg.sample_id;
  t.target = cfg.target;
  t.difficulty = cfg.difficulty;
  t.seed_context = cfg.seed_context;

  const Demonstration* demo = nullptr;
  if (cfg.shots == 1) {
    demo = cfg.demo_id ? &lib.demo(TaskKind::kTargetGuided, *cfg.demo_id)
                       : &lib.demo_pool(TaskKind::kTargetGuided).at(0);
  }

  std::vector<DialogueTurn> history = cfg.seed_context;
  auto user_turn = [&] {
    std::vector<DialogueTurn> masked = history;
    for (auto& turn : masked) turn.text.clear();
    const std::string skeleton =
        render_template(lib.user_simulator_template(), {{"history", render_history(masked)}});
    ++t.secrecy_checks;
    if (skeleton.find(cfg.target) != std::string::npos) {
      throw Error("target secrecy violated in user-simulator prompt for '" + cfg.sample_id +
                  "'");
    }
    const std::string prompt =
        render_template(lib.user_simulator_template(), {{"history", render_history(history)}});
    const CompletionRecord c = user.complete(prompt);
    DialogueTurn turn{Role::kUser, clean_user_reply(c.raw_text)};
    history.push_back(turn);
    t.turns.push_back(std::move(turn));
  };

  try {
    if (history.empty() || history.back().speaker == Role::kSystem) user_turn();
    while (t.system_turns < cfg.max_turns) {
      EvalSample s;
      s.id = cfg.sample_id;
      s.task = TaskKind::kTargetGuided;
      s.background.target_topic = cfg.target;
      s.history = history;
      const PromptBundle b = lib.assemble_prompt(s, cfg.scheme, cfg.shots, demo);
      const CompletionRecord c = system.complete(b);
      ParsedOutput out = parse_target(cfg.scheme, c.raw_text);
      // A malformed reply still counts as a turn; its raw text is what the
      // user sees.
      const std::string surface = out.response;
      ++t.system_turns;
      DialogueTurn turn{Role::kSystem, surface};
      history.push_back(turn);
      t.turns.push_back(std::move(turn));
      t.system_outputs.push_back(std::move(out));
      if (detect_target(surface, cfg.target)) {
        t.success = true;
        t.success_turn = t.system_turns;
        break;
      }
      if (t.system_turns >= cfg.max_turns) break;
      user_turn();
    }
  } catch (const ProviderError& e) {
    t.error = e.what();
  } catch (const TimeoutError& e) {
    t.error = e.what();
  }
  return t;
}

std::vector<Transcript> run_selfplay_batch(const std::vector<SelfPlayConfig>& cfgs,
                                           const PromptLibrary& lib, LlmGateway& system,
                                           LlmGateway& user, int workers) {
  std::vector<Transcript> out(cfgs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfgs.size()) return;
      try {
        out[i] = run_selfplay(cfgs[i], lib, system, user);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(cfgs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::filesystem::path write_transcript(const std::filesystem::path& dir, const Transcript& t,
                                       const SelfPlayConfig& cfg) {
  std::filesystem::create_directories(dir);
  std::string name;
  for (char c : t.sample_id) {
    name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  }
  const auto path = dir / (name + "-" + cfg.digest().substr(0, 12) + ".json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << nlohmann::json(t).dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
  return path;
}

namespace {

std::optional<double> dialogue_coherence(const Transcript& t, EmbeddingProvider& e,
                                         CoherenceMode mode) {
  std::vector<DialogueTurn> all = t.seed_context;
  all.insert(all.end(), t.turns.begin(), t.turns.end());
  const std::size_t first_generated = t.seed_context.size();
  std::vector<double> values;
  for (std::size_t i = std::max<std::size_t>(first_generated, 1); i < all.size(); ++i) {
    if (all[i].speaker != Role::kSystem) continue;
    if (text::trim(all[i].text).empty() || text::trim(all[i - 1].text).empty()) continue;
    const double v = coherence(all[i - 1].text, all[i].text, e);
    if (mode == CoherenceMode::kFinalTurn) values.clear();
    values.push_back(v);
  }
  if (values.empty()) return std::nullopt;
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

SelfPlayStats stats_of(const std::vector<const Transcript*>& ts, EmbeddingProvider& e,
                       CoherenceMode mode) {
  SelfPlayStats s;
  s.dialogues = ts.size();
  double turns = 0, coh = 0;
  std::size_t coh_n = 0;
  for (const Transcript* t : ts) {
    if (t->error) ++s.errored;
    if (t->success) {
      ++s.successes;
      turns += *t->success_turn;
    }
    if (auto c = dialogue_coherence(*t, e, mode)) {
      coh += *c;
      ++coh_n;
    }
  }
  s.success_rate = 100.0 * static_cast<double>(s.successes) / static_cast<double>(s.dialogues);
  if (s.successes > 0) s.mean_turns = turns / static_cast<double>(s.successes);
  if (coh_n > 0) s.coherence = coh / static_cast<double>(coh_n);
  return s;
}

}  // namespace

SelfPlayAggregate aggregate_selfplay(const std::vector<Transcript>& transcripts,
                                     EmbeddingProvider& embedding, CoherenceMode mode) {
  if (transcripts.empty()) throw ValidationError("aggregate_selfplay needs a transcript");
  SelfPlayAggregate agg;
  agg.embedding_model = embedding.model_id();
  agg.coherence_mode = mode;
  std::vector<const Transcript*> all;
  std::map<std::string, std::vector<const Transcript*>> strata;
  for (const auto& t : transcripts) {
    all.push_back(&t);
    if (!t.difficulty.empty()) strata[t.difficulty].push_back(&t);
  }
  agg.overall = stats_of(all, embedding, mode);
  for (const auto& [d, ts] : strata) agg.by_difficulty[d] = stats_of(ts, embedding, mode);
  return agg;
}

}  // namespace proeval
