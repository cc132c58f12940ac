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

#include <string>
#include <string_view>
#include <vector>

#include "proeval/types.h"
#include "proeval/vocabulary.h"

namespace proeval {

// Marker phrases of one (task, scheme) output template, lowercase, in the
// order they appear in a well-formed reply, plus the ParsedOutput fields the
// template can populate.
struct TemplateGrammar {
  TaskKind task = TaskKind::kClarification;
  SchemeKind scheme = SchemeKind::kStandard;
  std::vector<std::string> markers;
  std::vector<std::string> fields;
};

TemplateGrammar grammar_for(TaskKind task, SchemeKind scheme);

// None of the parse functions throw: malformed replies come back with
// status kGenerationError and a short reason.
ParsedOutput parse_clarification(SchemeKind scheme, std::string_view raw);
ParsedOutput parse_target(SchemeKind scheme, std::string_view raw);
ParsedOutput parse_negotiation(SchemeKind scheme, std::string_view raw,
                               const VocabularyStore& vocab);
ParsedOutput parse_output(TaskKind task, SchemeKind scheme, std::string_view raw,
                          const VocabularyStore& vocab);

// Items of a bracketed list body (without the brackets). Splits on commas at
// depth 0 outside quotes, strips wrapping quotes, drops empty items.
std::vector<std::string> split_bracket_list(std::string_view body);

// Currency mentions in textual order: "$"-prefixed amounts, and bare numerals
// next to a price cue word ("for 7", "go is 8", "20 dollars"). Numerals
// followed by a unit word ("3 years", "2 miles") are skipped.
std::vector<Money> extract_prices(std::string_view text);

// Inverse of the parsers: the reply the scheme's template would produce for
// `out`. Negotiation labels are written with their display names.
std::string render_completion(TaskKind task, SchemeKind scheme, const ParsedOutput& out,
                              const VocabularyStore& vocab);

}  // namespace proeval
