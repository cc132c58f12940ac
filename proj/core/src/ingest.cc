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

#include "proeval/ingest.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "proeval/errors.h"
#include "proeval/sample_io.h"
#include "proeval/text.h"

namespace proeval {

using nlohmann::json;

std::string_view to_token(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kAbgCoqa: return "abg_coqa";
    case DatasetKind::kPacific: return "pacific";
    case DatasetKind::kOtters: return "otters";
    case DatasetKind::kTgconv: return "tgconv";
    case DatasetKind::kCraigslist: return "craigslist";
  }
  return "";
}

DatasetKind parse_dataset_kind(std::string_view token) {
  const std::string t = text::to_lower_ascii(text::trim(token));
  for (DatasetKind k : {DatasetKind::kAbgCoqa, DatasetKind::kPacific, DatasetKind::kOtters,
                        DatasetKind::kTgconv, DatasetKind::kCraigslist}) {
    if (t == to_token(k)) return k;
  }
  throw ConfigError("unknown dataset '" + std::string(token) + "'");
}

TaskKind task_of(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kAbgCoqa:
    case DatasetKind::kPacific:
      return TaskKind::kClarification;
    case DatasetKind::kOtters:
    case DatasetKind::kTgconv:
      return TaskKind::kTargetGuided;
    case DatasetKind::kCraigslist:
      return TaskKind::kNegotiation;
  }
  return TaskKind::kClarification;
}

FieldMapping FieldMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field mapping " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("malformed field mapping " + path.string() + ": " + e.what());
  }
}

FieldMapping FieldMapping::from_json(const json& j) {
  FieldMapping m;
  for (const auto& [dataset, body] : j.at("datasets").items()) {
    const json fields = body.value("fields", json::object());
    for (const auto& [field, keys] : fields.items()) {
      m.fields_[dataset][field] = keys.get<std::vector<std::string>>();
    }
    const json splits = body.value("splits", json::object());
    for (const auto& [split, files] : splits.items()) {
      m.splits_[dataset][split] = files.get<std::vector<std::string>>();
    }
  }
  return m;
}

const std::vector<std::string>& FieldMapping::keys(DatasetKind dataset,
                                                   const std::string& field) const {
  static const std::vector<std::string> kNone;
  auto d = fields_.find(std::string(to_token(dataset)));
  if (d == fields_.end()) return kNone;
  auto f = d->second.find(field);
  return f == d->second.end() ? kNone : f->second;
}

std::vector<std::string> FieldMapping::split_files(DatasetKind dataset,
                                                   const std::string& split) const {
  auto d = splits_.find(std::string(to_token(dataset)));
  if (d == splits_.end()) return {};
  auto s = d->second.find(split);
  return s == d->second.end() ? std::vector<std::string>{} : s->second;
}

namespace {

std::size_t line_of_offset(const std::string& content, std::size_t offset) {
  offset = std::min(offset, content.size());
  return 1 + static_cast<std::size_t>(
                 std::count(content.begin(), content.begin() + static_cast<long>(offset), '\n'));
}

// A whole-file JSON document, or JSON Lines. Returns the top-level value for
// JSON documents and an array of records for JSON Lines.
json read_json_or_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  if (text::trim(content).empty()) throw IngestError(path.string() + ": empty file");

  auto parse_lines = [&]() {
    json records = json::array();
    std::istringstream in_lines(content);
    std::string line;
    for (std::size_t line_no = 1; std::getline(in_lines, line); ++line_no) {
      if (text::trim(line).empty()) continue;
      try {
        records.push_back(json::parse(line));
      } catch (const json::parse_error& e) {
        throw IngestError(path.string() + ":" + std::to_string(line_no) +
                          ": malformed record: " + e.what());
      }
    }
    return records;
  };
  if (path.extension() == ".jsonl") return parse_lines();

  try {
    return json::parse(content);
  } catch (const json::parse_error& whole_error) {
    std::size_t non_blank = 0;
    std::istringstream in_lines(content);
    for (std::string line; std::getline(in_lines, line);) {
      if (!text::trim(line).empty()) ++non_blank;
    }
    if (non_blank < 2) {
      throw IngestError(path.string() + ":" +
                        std::to_string(line_of_offset(content, whole_error.byte)) +
                        ": malformed JSON: " + whole_error.what());
    }
    return parse_lines();
  }
}

class RecordReader {
 public:
  RecordReader(const FieldMapping& mapping, DatasetKind dataset, std::string where)
      : mapping_(mapping), dataset_(dataset), file_(where), where_(std::move(where)) {}

  const json* find(const json& obj, const std::string& field) const {
    if (!obj.is_object()) return nullptr;
    const auto& keys = mapping_.keys(dataset_, field);
    for (const auto& k : keys) {
      auto it = obj.find(k);
      if (it != obj.end() && !it->is_null()) return &*it;
    }
    if (keys.empty()) {
      auto it = obj.find(field);
      if (it != obj.end() && !it->is_null()) return &*it;
    }
    return nullptr;
  }

  const json& require(const json& obj, const std::string& field) const {
    const json* v = find(obj, field);
    if (!v) {
      std::string tried;
      for (const auto& k : mapping_.keys(dataset_, field)) {
        tried += (tried.empty() ? "" : ", ") + k;
      }
      throw IngestError(where_ + ": missing field '" + field + "'" +
                        (tried.empty() ? "" : " (tried: " + tried + ")"));
    }
    return *v;
  }

  std::string require_string(const json& obj, const std::string& field) const {
    return as_text(require(obj, field), field);
  }

  std::optional<std::string> optional_string(const json& obj, const std::string& field) const {
    const json* v = find(obj, field);
    if (!v) return std::nullopt;
    return as_text(*v, field);
  }

  // Strings pass through; numbers are printed; arrays of scalars are joined.
  std::string as_text(const json& v, const std::string& field) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    if (v.is_array()) {
      std::string out;
      for (const auto& x : v) {
        if (!out.empty()) out += ", ";
        out += as_text(x, field);
      }
      return out;
    }
    throw IngestError(where_ + ": field '" + field + "' has unexpected type " +
                      std::string(v.type_name()));
  }

  std::vector<std::string> string_list(const json& v, const std::string& field) const {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(as_text(x, field));
    } else if (v.is_string()) {
      const std::string joined = v.get<std::string>();
      for (std::string_view piece : split_on(joined, ',')) {
        auto t = text::trim(piece);
        if (!t.empty()) out.emplace_back(t);
      }
    } else {
      throw IngestError(where_ + ": field '" + field + "' must be a list");
    }
    return out;
  }

  void at(const std::string& location) { where_ = file_ + ": " + location; }
  const std::string& where() const { return where_; }

 private:
  static std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == sep) {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return out;
  }

  const FieldMapping& mapping_;
  DatasetKind dataset_;
  std::string file_;
  std::string where_;
};

const json& record_array(const json& doc, const RecordReader& reader) {
  if (doc.is_array()) return doc;
  if (const json* list = reader.find(doc, "records"); list && list->is_array()) return *list;
  throw IngestError(reader.where() + ": expected a list of records");
}

// Assigns alternating roles so the final utterance belongs to `last`.
std::vector<DialogueTurn> alternate_roles(const std::vector<std::string>& utterances,
                                          Role last, Role other) {
  std::vector<DialogueTurn> out;
  const std::size_t n = utterances.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool is_last_side = (n - 1 - i) % 2 == 0;
    std::string t(text::trim(utterances[i]));
    if (t.empty()) continue;
    out.push_back({is_last_side ? last : other, std::move(t)});
  }
  return out;
}

bool truthy_label(const json& v, const std::vector<std::string>& positive_values) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number()) return v.get<double>() != 0.0;
  if (v.is_string()) {
    const std::string s = text::canonicalize(v.get<std::string>());
    for (const auto& p : positive_values) {
      if (s == text::canonicalize(p)) return true;
    }
    return false;
  }
  return false;
}

std::string make_id(DatasetKind kind, const std::string& index) {
  return std::string(to_token(kind)) + "/" + index;
}

std::vector<EvalSample> load_abg_coqa(const json& doc, RecordReader& r, DatasetKind kind,
                                      const FieldMapping& mapping) {
  std::vector<EvalSample> out;
  const json& records = record_array(doc, r);
  const auto& positive = mapping.keys(kind, "ambiguous_values");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    r.at("record " + std::to_string(i));
    EvalSample s;
    s.id = make_id(kind, std::to_string(i));
    s.task = TaskKind::kClarification;
    s.source_dataset = std::string(to_token(kind));
    s.background.document = r.require_string(rec, "story");
    for (const json& turn : r.require(rec, "history")) {
      s.history.push_back({Role::kUser, std::string(text::trim(r.require_string(turn, "question")))});
      s.history.push_back({Role::kSystem, std::string(text::trim(r.require_string(turn, "answer")))});
    }
    const json& target = r.require(rec, "target_turn");
    s.history.push_back({Role::kUser, std::string(text::trim(r.require_string(target, "question")))});
    const bool ambiguous = truthy_label(r.require(rec, "ambiguity"), positive);
    s.gold.ambiguity_label = ambiguous;
    if (ambiguous) {
      const json& clari = r.require(rec, "clarification_turn");
      s.gold.reference_response = r.require_string(clari, "question");
    } else if (auto answer = r.optional_string(target, "answer")) {
      s.gold.reference_response = *answer;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_table(const json& table) {
  std::string out;
  if (!table.is_array()) return out;
  for (const auto& row : table) {
    if (!row.is_array()) continue;
    std::string line;
    for (const auto& cell : row) {
      if (!line.empty()) line += " | ";
      line += cell.is_string() ? cell.get<std::string>() : cell.dump();
    }
    out += line + "\n";
  }
  return out;
}

std::vector<EvalSample> load_pacific(const json& doc, RecordReader& r, DatasetKind kind) {
  std::vector<EvalSample> out;
  const json& dialogs = record_array(doc, r);
  for (std::size_t d = 0; d < dialogs.size(); ++d) {
    const json& dialog = dialogs[d];
    r.at("dialogue " + std::to_string(d));
    std::string document;
    if (const json* table = r.find(dialog, "table")) {
      const json* cells = table->is_object() ? r.find(*table, "table_cells") : table;
      if (cells) document += render_table(*cells);
    }
    if (const json* paragraphs = r.find(dialog, "paragraphs")) {
      std::vector<std::pair<long, std::string>> ordered;
      for (const auto& p : *paragraphs) {
        long order = static_cast<long>(ordered.size());
        if (const json* o = r.find(p, "order"); o && o->is_number()) order = o->get<long>();
        ordered.emplace_back(order, r.require_string(p, "text"));
      }
      std::stable_sort(ordered.begin(), ordered.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [_, t] : ordered) document += t + "\n";
    }
    std::string trimmed_doc(text::trim(document));
    if (trimmed_doc.empty()) throw IngestError(r.where() + ": empty table and paragraphs");

    std::vector<DialogueTurn> history;
    const json& questions = r.require(dialog, "questions");
    for (std::size_t q = 0; q < questions.size(); ++q) {
      const json& turn = questions[q];
      r.at("dialogue " + std::to_string(d) + " question " + std::to_string(q));
      const std::string question(text::trim(r.require_string(turn, "question")));
      const std::string answer(text::trim(r.require_string(turn, "answer")));
      if (const json* label = r.find(turn, "req_clari")) {
        EvalSample s;
        s.id = make_id(kind, std::to_string(d) + "." + std::to_string(q));
        s.task = TaskKind::kClarification;
        s.source_dataset = std::string(to_token(kind));
        s.background.document = trimmed_doc;
        s.history = history;
        s.history.push_back({Role::kUser, question});
        s.gold.ambiguity_label = truthy_label(*label, {"true", "yes", "1"});
        if (!answer.empty()) s.gold.reference_response = answer;
        out.push_back(std::move(s));
      }
      if (!question.empty()) history.push_back({Role::kUser, question});
      if (!answer.empty()) history.push_back({Role::kSystem, answer});
    }
  }
  return out;
}

std::vector<std::string> context_utterances(const json& v, const RecordReader& r) {
  if (v.is_string()) return {v.get<std::string>()};
  return r.string_list(v, "context");
}

std::vector<EvalSample> load_otters(const json& doc, RecordReader& r, DatasetKind kind) {
  std::vector<EvalSample> out;
  const json& records = record_array(doc, r);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    r.at("record " + std::to_string(i));
    EvalSample s;
    s.id = make_id(kind, std::to_string(i));
    s.task = TaskKind::kTargetGuided;
    s.source_dataset = std::string(to_token(kind));
    s.background.target_topic = std::string(text::trim(r.require_string(rec, "target")));
    s.history = alternate_roles(context_utterances(r.require(rec, "context"), r),
                                Role::kUser, Role::kSystem);
    s.gold.reference_response = r.require_string(rec, "response");
    if (const json* kws = r.find(rec, "next_topics")) {
      s.gold.gold_next_topics = r.string_list(*kws, "next_topics");
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<EvalSample> load_tgconv(const json& doc, RecordReader& r, DatasetKind kind,
                                    const std::string& file_difficulty,
                                    std::size_t index_offset) {
  std::vector<EvalSample> out;
  const json& records = record_array(doc, r);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    r.at("record " + std::to_string(i));
    EvalSample s;
    s.id = make_id(kind, std::to_string(index_offset + i));
    s.task = TaskKind::kTargetGuided;
    s.source_dataset = std::string(to_token(kind));
    s.background.target_topic = std::string(text::trim(r.require_string(rec, "target")));
    std::string difficulty = file_difficulty;
    if (auto d = r.optional_string(rec, "difficulty")) {
      const std::string c = text::canonicalize(*d);
      difficulty = (c.find("hard") != std::string::npos || c == "true" || c == "1") ? "hard"
                                                                                     : "easy";
    }
    if (difficulty.empty()) {
      throw IngestError(r.where() + ": missing field 'difficulty' and file name has no "
                        "easy/hard tag");
    }
    s.background.difficulty = difficulty;
    if (const json* ctx = r.find(rec, "context")) {
      s.history = alternate_roles(context_utterances(*ctx, r), Role::kUser, Role::kSystem);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<Money> money_of(const json& v) {
  if (v.is_number()) return Money::parse(v.dump());
  if (v.is_string()) return Money::parse(v.get<std::string>());
  return std::nullopt;
}

std::vector<EvalSample> load_craigslist(const json& doc, RecordReader& r, DatasetKind kind,
                                        Role system_role, const VocabularyStore& vocab,
                                        std::vector<std::string>* warnings) {
  std::vector<EvalSample> out;
  const Vocabulary& acts = vocab.acts(TaskKind::kNegotiation);
  const Vocabulary& strategies = vocab.strategies();
  const json& dialogs = record_array(doc, r);
  for (std::size_t d = 0; d < dialogs.size(); ++d) {
    const json& dialog = dialogs[d];
    r.at("dialogue " + std::to_string(d));
    const json& kbs = r.require(r.require(dialog, "scenario"), "kbs");
    if (!kbs.is_array() || kbs.size() != 2) {
      throw IngestError(r.where() + ": field 'kbs' must list two agents");
    }
    std::optional<Money> listed, seller_target, buyer_target;
    std::string description;
    std::array<Role, 2> agent_roles{Role::kBuyer, Role::kSeller};
    for (std::size_t a = 0; a < 2; ++a) {
      const json& kb = kbs[a];
      const json& personal = r.require(kb, "personal");
      const Role role = parse_role(r.require_string(personal, "role"));
      agent_roles[a] = role;
      auto target = money_of(r.require(personal, "target"));
      if (!target) throw IngestError(r.where() + ": field 'target' is not a price");
      (role == Role::kSeller ? seller_target : buyer_target) = target;
      const json& item = r.require(kb, "item");
      if (!listed) {
        listed = money_of(r.require(item, "price"));
        if (!listed) throw IngestError(r.where() + ": field 'price' is not a price");
      }
      if (description.empty()) {
        std::string title;
        if (auto t = r.optional_string(item, "title")) title = *t;
        std::string body;
        if (const json* desc = r.find(item, "description")) {
          for (const auto& line : r.string_list(*desc, "description")) {
            if (!body.empty()) body += " ";
            body += line;
          }
        }
        description = title.empty() ? body : (body.empty() ? title : title + ". " + body);
      }
    }
    if (!seller_target || !buyer_target) {
      throw IngestError(r.where() + ": field 'role' must cover buyer and seller");
    }
    if (*listed == *buyer_target || listed->cents() <= 0) {
      if (warnings) {
        warnings->push_back(make_id(kind, std::to_string(d)) +
                            ": skipped, listed price unusable for SL ratio");
      }
      continue;
    }
    PriceScenario scenario{description, *listed, *seller_target, *buyer_target, system_role};

    std::vector<DialogueTurn> history;
    const json& events = r.require(dialog, "events");
    for (std::size_t e = 0; e < events.size(); ++e) {
      const json& ev = events[e];
      r.at("dialogue " + std::to_string(d) + " event " + std::to_string(e));
      const json& agent = r.require(ev, "agent");
      const std::size_t agent_idx = agent.is_number() ? agent.get<std::size_t>()
                                                      : std::stoul(agent.get<std::string>());
      if (agent_idx > 1) throw IngestError(r.where() + ": field 'agent' out of range");
      const Role speaker = agent_roles[agent_idx];
      const std::string action = text::to_lower_ascii(r.require_string(ev, "action"));
      std::string utterance;
      if (action == "message") {
        utterance = std::string(text::trim(r.require_string(ev, "data")));
      } else if (action == "offer") {
        const json& data = r.require(ev, "data");
        const json* price = data.is_object() ? r.find(data, "price") : &data;
        auto m = price ? money_of(*price) : std::nullopt;
        utterance = m ? "I offer $" + m->to_display() + "." : "I make an offer.";
      } else if (action == "accept") {
        utterance = "I accept the offer.";
      } else if (action == "reject") {
        utterance = "I reject the offer.";
      } else if (action == "quit") {
        utterance = "I quit.";
      } else {
        continue;
      }
      if (utterance.empty()) continue;

      const json* act_label = r.find(ev, "act");
      if (speaker == system_role && action == "message" && act_label) {
        EvalSample s;
        s.id = make_id(kind, std::to_string(d) + "." + std::to_string(e));
        s.task = TaskKind::kNegotiation;
        s.source_dataset = std::string(to_token(kind));
        s.background.scenario = scenario;
        s.history = history;
        s.gold.reference_response = utterance;
        const std::string label = r.as_text(*act_label, "act");
        auto act = acts.match(label);
        if (!act) throw IngestError(r.where() + ": field 'act' has unknown label '" + label + "'");
        s.gold.gold_act = *act;
        std::vector<std::string> gold_strategies;
        if (const json* st = r.find(ev, "strategies")) {
          for (const auto& mention : r.string_list(*st, "strategies")) {
            auto tok = strategies.match(mention);
            if (!tok) {
              throw IngestError(r.where() + ": field 'strategies' has unknown label '" +
                                mention + "'");
            }
            gold_strategies.push_back(*tok);
          }
        }
        normalize_label_set(gold_strategies);
        s.gold.gold_strategies = std::move(gold_strategies);
        out.push_back(std::move(s));
      }
      history.push_back({speaker, std::move(utterance)});
    }
  }
  return out;
}

std::string difficulty_from_name(const std::filesystem::path& p) {
  const std::string name = text::to_lower_ascii(p.filename().string());
  if (name.find("hard") != std::string::npos) return "hard";
  if (name.find("easy") != std::string::npos) return "easy";
  return "";
}

}  // namespace

std::vector<EvalSample> load_dataset(const DatasetAdapterSpec& spec,
                                     const FieldMapping& mapping,
                                     const VocabularyStore& vocab,
                                     std::vector<std::string>* warnings) {
  if (spec.split != "test" && spec.split != "dev") {
    throw ConfigError("split must be test or dev, got '" + spec.split + "'");
  }
  if (!std::filesystem::exists(spec.source_path)) {
    throw IngestError("source path does not exist: " + spec.source_path.string());
  }
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(spec.source_path)) {
    for (const auto& name : mapping.split_files(spec.dataset, spec.split)) {
      if (std::filesystem::exists(spec.source_path / name)) {
        files.push_back(spec.source_path / name);
        // TGConv ships easy and hard targets as separate files.
        if (spec.dataset != DatasetKind::kTgconv) break;
      }
    }
    if (files.empty()) {
      throw IngestError("no " + spec.split + " split file for " +
                        std::string(to_token(spec.dataset)) + " under " +
                        spec.source_path.string());
    }
  } else {
    files.push_back(spec.source_path);
  }

  std::vector<EvalSample> out;
  for (const auto& file : files) {
    const json doc = read_json_or_jsonl(file);
    RecordReader reader(mapping, spec.dataset, file.string());
    std::vector<EvalSample> part;
    switch (spec.dataset) {
      case DatasetKind::kAbgCoqa:
        part = load_abg_coqa(doc, reader, spec.dataset, mapping);
        break;
      case DatasetKind::kPacific:
        part = load_pacific(doc, reader, spec.dataset);
        break;
      case DatasetKind::kOtters:
        part = load_otters(doc, reader, spec.dataset);
        break;
      case DatasetKind::kTgconv:
        part = load_tgconv(doc, reader, spec.dataset, difficulty_from_name(file), out.size());
        break;
      case DatasetKind::kCraigslist:
        part = load_craigslist(doc, reader, spec.dataset, spec.negotiation_system_role, vocab,
                               warnings);
        break;
    }
    for (auto& s : part) out.push_back(std::move(s));
  }
  if (out.empty()) {
    throw IngestError(spec.source_path.string() + ": no samples in " + spec.split + " split");
  }
  for (const auto& s : out) {
    ValidationResult v = validate_sample(s, vocab);
    if (!v.ok()) throw IngestError(s.id + ": " + v.errors.front());
  }
  return out;
}

DatasetStats dataset_stats(const std::vector<EvalSample>& samples) {
  if (samples.empty()) throw Error("dataset_stats: empty sample list");
  DatasetStats st;
  st.total = samples.size();
  for (const auto& s : samples) {
    ++st.by_task[std::string(to_token(s.task))];
    ++st.by_dataset[s.source_dataset];
    if (s.background.difficulty) ++st.by_difficulty[*s.background.difficulty];
    if (s.task == TaskKind::kClarification) {
      ++st.clarification_total;
      if (s.gold.ambiguity_label.value_or(false)) ++st.ambiguous;
    }
  }
  if (st.clarification_total > 0) {
    st.ambiguity_rate =
        static_cast<double>(st.ambiguous) / static_cast<double>(st.clarification_total);
  }
  return st;
}

nlohmann::json to_json(const DatasetStats& st) {
  json j{{"total", st.total},
         {"by_task", st.by_task},
         {"by_dataset", st.by_dataset},
         {"by_difficulty", st.by_difficulty},
         {"clarification_total", st.clarification_total},
         {"ambiguous", st.ambiguous}};
  j["ambiguity_rate"] = st.ambiguity_rate ? json(*st.ambiguity_rate) : json(nullptr);
  return j;
}

}  // namespace proeval
