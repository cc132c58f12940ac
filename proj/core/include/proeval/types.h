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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace proeval {

enum class TaskKind { kClarification, kTargetGuided, kNegotiation };

enum class SchemeKind { kStandard, kProactive, kProCoT };

enum class Role { kUser, kSystem, kBuyer, kSeller };

// Lowercase wire tokens: "clarification", "target_guided", "negotiation".
std::string_view to_token(TaskKind task);
std::string_view to_token(SchemeKind scheme);
std::string_view to_token(Role role);

// Throw ConfigError on unknown tokens.
TaskKind parse_task_kind(std::string_view token);
SchemeKind parse_scheme_kind(std::string_view token);
Role parse_role(std::string_view token);

// "User", "System", "Buyer", "Seller" as they appear in rendered histories.
std::string_view display_name(Role role);

// Roles a task's dialogue history may use.
bool role_allowed(TaskKind task, Role role);

// Exact currency amount with two fractional digits.
class Money {
 public:
  constexpr Money() = default;
  static constexpr Money from_cents(std::int64_t cents) { return Money(cents); }

  // Accepts "10", "10.5", "10.50", "1,250.00", optional leading '$'.
  // More than two fractional digits are rounded half away from zero.
  static std::optional<Money> parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }

  // Canonical form with exactly two fractional digits: "10.00".
  std::string to_string() const;
  // Prompt form: "10" for whole amounts, "10.50" otherwise.
  std::string to_display() const;

  constexpr auto operator<=>(const Money&) const = default;

 private:
  constexpr explicit Money(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

struct DialogueTurn {
  Role speaker = Role::kUser;
  std::string text;

  bool operator==(const DialogueTurn&) const = default;
};

struct PriceScenario {
  std::string item_description;
  Money listed_price;
  Money seller_target;
  Money buyer_target;
  Role system_role = Role::kSeller;

  bool operator==(const PriceScenario&) const = default;
};

// Exactly the field matching the sample's task is populated.
struct TaskBackground {
  std::optional<std::string> document;
  std::optional<std::string> target_topic;
  // "easy" | "hard" for dialogue-level target-guided samples.
  std::optional<std::string> difficulty;
  std::optional<PriceScenario> scenario;

  bool operator==(const TaskBackground&) const = default;
};

struct GoldAnnotation {
  std::optional<bool> ambiguity_label;
  std::optional<std::string> reference_response;
  std::optional<std::vector<std::string>> gold_next_topics;
  std::optional<std::string> gold_act;
  // Kept sorted and de-duplicated.
  std::optional<std::vector<std::string>> gold_strategies;

  bool operator==(const GoldAnnotation&) const = default;
};

struct EvalSample {
  std::string id;
  TaskKind task = TaskKind::kClarification;
  TaskBackground background;
  std::vector<DialogueTurn> history;
  GoldAnnotation gold;
  std::string source_dataset;

  bool operator==(const EvalSample&) const = default;
};

enum class ParseStatus { kParsed, kGenerationError };

// Structured decomposition of one raw model reply.
//
// kGenerationError leaves every structured field empty; `response` may still
// hold the trimmed raw text for auditing.
struct ParsedOutput {
  std::optional<std::string> thought;
  std::optional<std::string> act;
  std::optional<std::vector<std::string>> strategies;
  // Strategy mentions that matched nothing in the vocabulary. Never scored.
  std::vector<std::string> unrecognized_strategies;
  std::optional<std::vector<std::string>> next_topics;
  std::optional<std::vector<std::string>> current_topics;
  std::string response;
  ParseStatus status = ParseStatus::kParsed;
  std::string error_reason;
  std::vector<std::string> warnings;

  bool parsed() const { return status == ParseStatus::kParsed; }

  static ParsedOutput generation_error(std::string reason, std::string raw);

  bool operator==(const ParsedOutput&) const = default;
};

}  // namespace proeval
