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
#include <string_view>
#include <vector>

#include "proeval/types.h"
#include "proeval/vocabulary.h"

namespace proeval {

// Replaces every `{{name}}` with `values[name]` in a single pass; substituted
// text is never re-scanned. Unknown names throw ConfigError.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string, std::less<>>& values);

// Names of the placeholders a template uses, in order of first appearance.
std::vector<std::string> template_placeholders(std::string_view tmpl);

// A worked example plus the completion shown for each scheme.
struct Demonstration {
  EvalSample sample;
  std::map<SchemeKind, std::string> completions;

  const std::string& completion(SchemeKind scheme) const;
};

struct PromptTemplateSet {
  TaskKind task = TaskKind::kClarification;
  std::string instruction_standard;
  std::string instruction_proactive;
  std::string instruction_procot;
  // Layout of the document / history / question / target / scenario block.
  std::string sample_layout;
  // Negotiation only: act and strategy lists shown after the instruction.
  std::string vocabulary_layout;
  std::vector<Demonstration> demonstrations;

  const std::string& instruction(SchemeKind scheme) const;
};

struct PromptBundle {
  std::string text;
  TaskKind task = TaskKind::kClarification;
  SchemeKind scheme = SchemeKind::kStandard;
  int shots = 0;
  std::vector<std::string> demo_ids;

  bool operator==(const PromptBundle&) const = default;
};

// Prompt templates for all tasks, loaded from a template directory:
//
//   <dir>/<task>/instruction_{standard,proactive,procot}.txt
//   <dir>/<task>/sample.txt
//   <dir>/negotiation/vocabulary.txt
//   <dir>/demos/<task>.json
//   <dir>/user_simulator.txt
//
// One trailing newline is stripped from each text file.
class PromptLibrary {
 public:
  static PromptLibrary load(const std::filesystem::path& dir, VocabularyStore vocab);

  const PromptTemplateSet& templates(TaskKind task) const;
  const VocabularyStore& vocab() const { return vocab_; }
  const std::string& user_simulator_template() const { return user_simulator_; }

  // Instruction for a scheme with role placeholders filled in. For negotiation
  // this depends on which side the system plays.
  std::string instruction(TaskKind task, SchemeKind scheme,
                          Role system_role = Role::kSeller) const;

  // Instruction plus, for negotiation under Proactive/ProCoT, the vocabulary
  // block.
  std::string instruction_section(TaskKind task, SchemeKind scheme,
                                  Role system_role = Role::kSeller) const;

  std::string render_sample_block(const EvalSample& sample) const;

  // shots = 1 requires a demonstration of the same task that is not the test
  // sample itself. Throws ConfigError otherwise.
  PromptBundle assemble_prompt(const EvalSample& sample, SchemeKind scheme, int shots,
                               const Demonstration* demo = nullptr) const;

  // Curated demonstrations for a task. Every scheme has a completion.
  const std::vector<Demonstration>& demo_pool(TaskKind task) const;
  // Looks up a demonstration by sample id; throws ConfigError when absent.
  const Demonstration& demo(TaskKind task, std::string_view id) const;

 private:
  std::map<TaskKind, PromptTemplateSet> sets_;
  VocabularyStore vocab_;
  std::string user_simulator_;
};

// Directory holding templates/, vocab/ and adapters/: $PROEVAL_DATA_DIR when
// set, otherwise the location fixed at build time.
std::filesystem::path default_data_dir();

// ["User": "...", "System": "..."] in chronological order.
std::string render_history(const std::vector<DialogueTurn>& history);

}  // namespace proeval
