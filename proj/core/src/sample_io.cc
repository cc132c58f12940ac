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

#include "proeval/sample_io.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {
namespace {

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    v.reset();
  } else {
    v = it->template get<T>();
  }
}

}  // namespace

void to_json(nlohmann::json& j, const Money& m) { j = m.to_string(); }

void from_json(const nlohmann::json& j, Money& m) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw nlohmann::json::type_error::create(302, "price must be a string or number", j);
  }
  auto parsed = Money::parse(text);
  if (!parsed) {
    throw nlohmann::json::type_error::create(302, "malformed price '" + text + "'", j);
  }
  m = *parsed;
}

void to_json(nlohmann::json& j, const DialogueTurn& t) {
  j = nlohmann::json{{"speaker", to_token(t.speaker)}, {"text", t.text}};
}

void from_json(const nlohmann::json& j, DialogueTurn& t) {
  t.speaker = parse_role(j.at("speaker").get<std::string>());
  t.text = j.at("text").get<std::string>();
}

void to_json(nlohmann::json& j, const PriceScenario& s) {
  j = nlohmann::json{{"item_description", s.item_description},
                     {"listed_price", s.listed_price},
                     {"seller_target", s.seller_target},
                     {"buyer_target", s.buyer_target},
                     {"system_role", to_token(s.system_role)}};
}

void from_json(const nlohmann::json& j, PriceScenario& s) {
  s.item_description = j.at("item_description").get<std::string>();
  s.listed_price = j.at("listed_price").get<Money>();
  s.seller_target = j.at("seller_target").get<Money>();
  s.buyer_target = j.at("buyer_target").get<Money>();
  s.system_role = parse_role(j.value("system_role", std::string("seller")));
}

void to_json(nlohmann::json& j, const TaskBackground& b) {
  j = nlohmann::json::object();
  put_optional(j, "document", b.document);
  put_optional(j, "target_topic", b.target_topic);
  put_optional(j, "difficulty", b.difficulty);
  put_optional(j, "scenario", b.scenario);
}

void from_json(const nlohmann::json& j, TaskBackground& b) {
  get_optional(j, "document", b.document);
  get_optional(j, "target_topic", b.target_topic);
  get_optional(j, "difficulty", b.difficulty);
  get_optional(j, "scenario", b.scenario);
}

void to_json(nlohmann::json& j, const GoldAnnotation& g) {
  j = nlohmann::json::object();
  put_optional(j, "ambiguity_label", g.ambiguity_label);
  put_optional(j, "reference_response", g.reference_response);
  put_optional(j, "gold_next_topics", g.gold_next_topics);
  put_optional(j, "gold_act", g.gold_act);
  put_optional(j, "gold_strategies", g.gold_strategies);
}

void from_json(const nlohmann::json& j, GoldAnnotation& g) {
  get_optional(j, "ambiguity_label", g.ambiguity_label);
  get_optional(j, "reference_response", g.reference_response);
  get_optional(j, "gold_next_topics", g.gold_next_topics);
  get_optional(j, "gold_act", g.gold_act);
  get_optional(j, "gold_strategies", g.gold_strategies);
}

void to_json(nlohmann::json& j, const EvalSample& s) {
  j = nlohmann::json{{"id", s.id},
                     {"task", to_token(s.task)},
                     {"source_dataset", s.source_dataset},
                     {"background", s.background},
                     {"history", s.history},
                     {"gold", s.gold}};
}

void from_json(const nlohmann::json& j, EvalSample& s) {
  s.id = j.at("id").get<std::string>();
  s.task = parse_task_kind(j.at("task").get<std::string>());
  s.source_dataset = j.value("source_dataset", std::string());
  s.background = j.value("background", TaskBackground{});
  s.history = j.value("history", std::vector<DialogueTurn>{});
  s.gold = j.value("gold", GoldAnnotation{});
}

void to_json(nlohmann::json& j, const ParsedOutput& p) {
  j = nlohmann::json::object();
  j["status"] = p.parsed() ? "parsed" : "generation_error";
  if (!p.parsed()) j["error_reason"] = p.error_reason;
  put_optional(j, "thought", p.thought);
  put_optional(j, "act", p.act);
  put_optional(j, "strategies", p.strategies);
  if (!p.unrecognized_strategies.empty()) {
    j["unrecognized_strategies"] = p.unrecognized_strategies;
  }
  put_optional(j, "current_topics", p.current_topics);
  put_optional(j, "next_topics", p.next_topics);
  j["response"] = p.response;
  if (!p.warnings.empty()) j["warnings"] = p.warnings;
}

void from_json(const nlohmann::json& j, ParsedOutput& p) {
  p = ParsedOutput{};
  p.status = j.at("status").get<std::string>() == "parsed" ? ParseStatus::kParsed
                                                           : ParseStatus::kGenerationError;
  p.error_reason = j.value("error_reason", std::string());
  get_optional(j, "thought", p.thought);
  get_optional(j, "act", p.act);
  get_optional(j, "strategies", p.strategies);
  p.unrecognized_strategies = j.value("unrecognized_strategies", std::vector<std::string>{});
  get_optional(j, "current_topics", p.current_topics);
  get_optional(j, "next_topics", p.next_topics);
  p.response = j.value("response", std::string());
  p.warnings = j.value("warnings", std::vector<std::string>{});
}

void write_samples_jsonl(const std::filesystem::path& path,
                         const std::vector<EvalSample>& samples) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& s : samples) {
    out << nlohmann::json(s).dump() << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<EvalSample> read_samples_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  std::vector<EvalSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<EvalSample>());
    } catch (const std::exception& e) {
      throw IngestError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty()) throw IngestError(path.string() + ": no records");
  return out;
}

void normalize_label_set(std::vector<std::string>& labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

ValidationResult validate_sample(const EvalSample& s, const VocabularyStore& vocab) {
  ValidationResult r;
  auto fail = [&](std::string msg) { r.errors.push_back(std::move(msg)); };

  if (s.id.empty()) fail("empty sample id");

  for (std::size_t i = 0; i < s.history.size(); ++i) {
    const DialogueTurn& t = s.history[i];
    if (text::trim(t.text).empty()) {
      fail("history turn " + std::to_string(i) + " has empty text");
    }
    if (!role_allowed(s.task, t.speaker)) {
      fail("history turn " + std::to_string(i) + " speaker '" +
           std::string(to_token(t.speaker)) + "' not allowed for task " +
           std::string(to_token(s.task)));
    }
  }

  const TaskBackground& bg = s.background;
  const GoldAnnotation& g = s.gold;
  switch (s.task) {
    case TaskKind::kClarification:
      if (!bg.document) fail("clarification sample missing document");
      if (bg.target_topic || bg.scenario) fail("background populated for another task");
      if (s.history.empty()) {
        fail("clarification sample has empty history");
      } else if (s.history.back().speaker != Role::kUser) {
        fail("clarification history must end with the user question");
      }
      if (!g.ambiguity_label) fail("empty gold: missing ambiguity_label");
      break;

    case TaskKind::kTargetGuided:
      if (!bg.target_topic || text::trim(*bg.target_topic).empty()) {
        fail("target-guided sample missing target_topic");
      }
      if (bg.document || bg.scenario) fail("background populated for another task");
      if (bg.difficulty && *bg.difficulty != "easy" && *bg.difficulty != "hard") {
        fail("difficulty must be easy or hard, got '" + *bg.difficulty + "'");
      }
      // Dialogue-level (self-play) samples carry no turn-level gold.
      if (!bg.difficulty && !g.reference_response && !g.gold_next_topics) {
        fail("empty gold: turn-level target sample needs reference_response or "
             "gold_next_topics");
      }
      break;

    case TaskKind::kNegotiation: {
      if (bg.document || bg.target_topic) fail("background populated for another task");
      if (!bg.scenario) {
        fail("negotiation sample missing price scenario");
        break;
      }
      const PriceScenario& sc = *bg.scenario;
      if (sc.listed_price.cents() <= 0) fail("listed_price must be > 0");
      if (sc.seller_target.cents() < 0 || sc.buyer_target.cents() < 0) {
        fail("prices must be >= 0");
      }
      if (sc.listed_price == sc.buyer_target) {
        fail("SL denominator zero: listed_price equals buyer_target");
      }
      if (sc.system_role != Role::kBuyer && sc.system_role != Role::kSeller) {
        fail("system_role must be buyer or seller");
      }
      if (!g.reference_response && !g.gold_act) {
        fail("empty gold: negotiation sample needs reference_response or gold_act");
      }
      const Vocabulary& acts = vocab.acts(TaskKind::kNegotiation);
      if (g.gold_act && !acts.contains(*g.gold_act)) {
        fail("unknown act token '" + *g.gold_act + "'");
      }
      if (g.gold_strategies) {
        const Vocabulary& strategies = vocab.strategies();
        for (const auto& st : *g.gold_strategies) {
          if (!strategies.contains(st)) fail("unknown strategy token '" + st + "'");
        }
      }
      break;
    }
  }

  if (s.task != TaskKind::kNegotiation && g.gold_act &&
      !vocab.acts(s.task).contains(*g.gold_act)) {
    fail("unknown act token '" + *g.gold_act + "'");
  }
  if (s.task != TaskKind::kNegotiation && g.gold_strategies) {
    fail("gold_strategies only apply to negotiation samples");
  }
  return r;
}

const EvalSample& require_valid(const EvalSample& sample, const VocabularyStore& vocab) {
  ValidationResult r = validate_sample(sample, vocab);
  if (!r.ok()) {
    std::string msg = "sample '" + sample.id + "' invalid:";
    for (const auto& e : r.errors) msg += "\n  - " + e;
    throw ValidationError(msg);
  }
  return sample;
}

}  // namespace proeval
