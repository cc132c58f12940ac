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

namespace proeval::text {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// Replaces curly single/double quotes with their ASCII counterparts.
std::string straighten_quotes(std::string_view s);

// Lowercase, trim, drop ASCII punctuation, collapse runs of whitespace,
// and treat '_' and '-' as spaces. "Propose_price!" -> "propose price".
std::string canonicalize(std::string_view s);

// Identifier recorded in report manifests for the tokenizer below.
inline constexpr std::string_view kTokenizerId = "lower-uniws-punct-v1";

// Lowercases ASCII, splits on Unicode whitespace, and detaches each ASCII
// punctuation character into its own token.
std::vector<std::string> tokenize(std::string_view s);

// Splits on Unicode whitespace without any other normalisation.
std::vector<std::string> split_whitespace(std::string_view s);

bool is_ascii_punct(char c);

// Length in bytes of a Unicode whitespace code point starting at `i`, or 0.
std::size_t whitespace_at(std::string_view s, std::size_t i);

}  // namespace proeval::text
