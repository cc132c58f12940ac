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

#include "proeval/prompt.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "proeval/errors.h"
#include "proeval/sample_io.h"

namespace proeval {
namespace {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("missing template file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::string task_dir_name(TaskKind task) { return std::string(to_token(task)); }

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    const std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw ConfigError("unterminated placeholder in template");
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::string_view name = tmpl.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) {
      throw ConfigError("template placeholder '{{" + std::string(name) + "}}' has no value");
    }
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::vector<std::string> template_placeholders(std::string_view tmpl) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = tmpl.find("{{", pos)) != std::string_view::npos) {
    const std::size_t close = tmpl.find("}}", pos + 2);
    if (close == std::string_view::npos) break;
    std::string name(tmpl.substr(pos + 2, close - pos - 2));
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    pos = close + 2;
  }
  return out;
}

const std::string& Demonstration::completion(SchemeKind scheme) const {
  auto it = completions.find(scheme);
  if (it == completions.end()) {
    throw ConfigError("demonstration '" + sample.id + "' has no " +
                      std::string(to_token(scheme)) + " completion");
  }
  return it->second;
}

const std::string& PromptTemplateSet::instruction(SchemeKind scheme) const {
  switch (scheme) {
    case SchemeKind::kStandard: return instruction_standard;
    case SchemeKind::kProactive: return instruction_proactive;
    case SchemeKind::kProCoT: return instruction_procot;
  }
  return instruction_standard;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir, VocabularyStore vocab) {
  PromptLibrary lib;
  lib.vocab_ = std::move(vocab);
  for (TaskKind task :
       {TaskKind::kClarification, TaskKind::kTargetGuided, TaskKind::kNegotiation}) {
    const auto tdir = dir / task_dir_name(task);
    PromptTemplateSet set;
    set.task = task;
    set.instruction_standard = read_text_file(tdir / "instruction_standard.txt");
    set.instruction_proactive = read_text_file(tdir / "instruction_proactive.txt");
    set.instruction_procot = read_text_file(tdir / "instruction_procot.txt");
    set.sample_layout = read_text_file(tdir / "sample.txt");
    if (task == TaskKind::kNegotiation) {
      set.vocabulary_layout = read_text_file(tdir / "vocabulary.txt");
    }
    for (SchemeKind s : {SchemeKind::kStandard, SchemeKind::kProactive, SchemeKind::kProCoT}) {
      if (set.instruction(s).empty()) {
        throw ConfigError("empty " + std::string(to_token(s)) + " instruction for " +
                          task_dir_name(task));
      }
    }

    const auto demo_path = dir / "demos" / (task_dir_name(task) + ".json");
    std::ifstream in(demo_path);
    if (!in) throw ConfigError("missing demonstration fixture " + demo_path.string());
    nlohmann::json j;
    try {
      in >> j;
      for (const auto& d : j.at("demonstrations")) {
        Demonstration demo;
        demo.sample = d.at("sample").get<EvalSample>();
        if (demo.sample.task != task) {
          throw ConfigError("demonstration '" + demo.sample.id + "' has the wrong task");
        }
        for (const auto& [scheme, text] : d.at("completions").items()) {
          demo.completions[parse_scheme_kind(scheme)] = text.get<std::string>();
        }
        for (SchemeKind s :
             {SchemeKind::kStandard, SchemeKind::kProactive, SchemeKind::kProCoT}) {
          demo.completion(s);
        }
        set.demonstrations.push_back(std::move(demo));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed demonstration fixture " + demo_path.string() + ": " +
                        e.what());
    }
    lib.sets_.emplace(task, std::move(set));
  }
  lib.user_simulator_ = read_text_file(dir / "user_simulator.txt");
  return lib;
}

const PromptTemplateSet& PromptLibrary::templates(TaskKind task) const {
  auto it = sets_.find(task);
  if (it == sets_.end()) throw ConfigError("no templates for " + task_dir_name(task));
  return it->second;
}

std::string PromptLibrary::instruction(TaskKind task, SchemeKind scheme,
                                       Role system_role) const {
  const bool buyer = system_role == Role::kBuyer;
  return render_template(templates(task).instruction(scheme),
                         {{"role", buyer ? "buyer" : "seller"},
                          {"counterpart", buyer ? "seller" : "buyer"},
                          {"price_kind", buyer ? "buying" : "selling"}});
}

std::string PromptLibrary::instruction_section(TaskKind task, SchemeKind scheme,
                                               Role system_role) const {
  std::string out = instruction(task, scheme, system_role);
  if (task == TaskKind::kNegotiation && scheme != SchemeKind::kStandard) {
    std::vector<std::string> acts, strategies;
    for (const auto& e : vocab_.acts(TaskKind::kNegotiation).entries()) acts.push_back(e.display);
    for (const auto& e : vocab_.strategies().entries()) strategies.push_back(e.display);
    out += "\n\n";
    out += render_template(templates(task).vocabulary_layout,
                           {{"acts", join(acts, ", ")}, {"strategies", join(strategies, ", ")}});
  }
  return out;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("PROEVAL_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return PROEVAL_DEFAULT_DATA_DIR;
}

std::string render_history(const std::vector<DialogueTurn>& history) {
  std::string out = "[";
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i) out += ", ";
    out += "\"";
    out += display_name(history[i].speaker);
    out += "\": \"";
    out += history[i].text;
    out += "\"";
  }
  out += "]";
  return out;
}

std::string PromptLibrary::render_sample_block(const EvalSample& s) const {
  const PromptTemplateSet& set = templates(s.task);
  std::map<std::string, std::string, std::less<>> values;
  switch (s.task) {
    case TaskKind::kClarification: {
      std::vector<DialogueTurn> context = s.history;
      std::string question;
      if (!context.empty() && context.back().speaker == Role::kUser) {
        question = context.back().text;
        context.pop_back();
      }
      values["document"] = s.background.document.value_or("");
      values["history"] = render_history(context);
      values["question"] = question;
      break;
    }
    case TaskKind::kTargetGuided:
      values["target_topic"] = s.background.target_topic.value_or("");
      values["history"] = render_history(s.history);
      break;
    case TaskKind::kNegotiation: {
      const PriceScenario sc = s.background.scenario.value_or(PriceScenario{});
      const bool buyer = sc.system_role == Role::kBuyer;
      values["item_description"] = sc.item_description;
      values["price_kind"] = buyer ? "buying" : "selling";
      values["target_price"] = (buyer ? sc.buyer_target : sc.seller_target).to_display();
      values["listed_price"] = sc.listed_price.to_display();
      values["history"] = render_history(s.history);
      break;
    }
  }
  return render_template(set.sample_layout, values);
}

PromptBundle PromptLibrary::assemble_prompt(const EvalSample& s, SchemeKind scheme, int shots,
                                            const Demonstration* demo) const {
  if (shots != 0 && shots != 1) throw ConfigError("shots must be 0 or 1");
  if (shots == 1 && demo == nullptr) throw ConfigError("one-shot prompt needs a demonstration");
  if (shots == 1) {
    if (demo->sample.task != s.task) {
      throw ConfigError("demonstration task " + std::string(to_token(demo->sample.task)) +
                        " does not match sample task " + std::string(to_token(s.task)));
    }
    if (demo->sample.id == s.id || demo->sample == s) {
      throw ConfigError("demonstration '" + demo->sample.id + "' is the test sample");
    }
  }
  const Role role = s.background.scenario ? s.background.scenario->system_role : Role::kSeller;

  PromptBundle b;
  b.task = s.task;
  b.scheme = scheme;
  b.shots = shots;
  b.text = instruction_section(s.task, scheme, role);
  b.text += "\n\n";
  if (shots == 1) {
    b.demo_ids.push_back(demo->sample.id);
    b.text += render_sample_block(demo->sample);
    b.text += "\n";
    b.text += demo->completion(scheme);
    b.text += "\n\n";
  }
  b.text += render_sample_block(s);
  return b;
}

const std::vector<Demonstration>& PromptLibrary::demo_pool(TaskKind task) const {
  return templates(task).demonstrations;
}

const Demonstration& PromptLibrary::demo(TaskKind task, std::string_view id) const {
  for (const auto& d : demo_pool(task)) {
    if (d.sample.id == id) return d;
  }
  throw ConfigError("no demonstration '" + std::string(id) + "' for " + task_dir_name(task));
}

}  // namespace proeval
