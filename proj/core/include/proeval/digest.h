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

namespace proeval {

// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

// Content hash of everything that determines a completion. The hashed
// payload is canonical JSON, so field order and float formatting are fixed.
std::string prompt_digest(std::string_view model_id, std::string_view prompt,
                          double temperature, int max_new_tokens);

}  // namespace proeval
