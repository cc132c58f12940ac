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

#include "proeval/types.h"

#include <cstdlib>
#include <limits>

#include "proeval/errors.h"
#include "proeval/text.h"

namespace proeval {

std::string_view to_token(TaskKind task) {
  switch (task) {
    case TaskKind::kClarification: return "clarification";
    case TaskKind::kTargetGuided: return "target_guided";
    case TaskKind::kNegotiation: return "negotiation";
  }
  return "";
}

std::string_view to_token(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kStandard: return "standard";
    case SchemeKind::kProactive: return "proactive";
    case SchemeKind::kProCoT: return "procot";
  }
  return "";
}

std::string_view to_token(Role role) {
  switch (role) {
    case Role::kUser: return "user";
    case Role::kSystem: return "system";
    case Role::kBuyer: return "buyer";
    case Role::kSeller: return "seller";
  }
  return "";
}

TaskKind parse_task_kind(std::string_view token) {
  const std::string t = text::to_lower_ascii(text::trim(token));
  if (t == "clarification") return TaskKind::kClarification;
  if (t == "target_guided" || t == "target") return TaskKind::kTargetGuided;
  if (t == "negotiation") return TaskKind::kNegotiation;
  throw ConfigError("unknown task kind '" + std::string(token) + "'");
}

SchemeKind parse_scheme_kind(std::string_view token) {
  const std::string t = text::to_lower_ascii(text::trim(token));
  if (t == "standard") return SchemeKind::kStandard;
  if (t == "proactive") return SchemeKind::kProactive;
  if (t == "procot") return SchemeKind::kProCoT;
  throw ConfigError("unknown prompting scheme '" + std::string(token) + "'");
}

Role parse_role(std::string_view token) {
  const std::string t = text::to_lower_ascii(text::trim(token));
  if (t == "user") return Role::kUser;
  if (t == "system") return Role::kSystem;
  if (t == "buyer") return Role::kBuyer;
  if (t == "seller") return Role::kSeller;
  throw ConfigError("unknown speaker role '" + std::string(token) + "'");
}

std::string_view display_name(Role role) {
  switch (role) {
    case Role::kUser: return "User";
    case Role::kSystem: return "System";
    case Role::kBuyer: return "Buyer";
    case Role::kSeller: return "Seller";
  }
  return "";
}

bool role_allowed(TaskKind task, Role role) {
  if (task == TaskKind::kNegotiation) {
    return role == Role::kBuyer || role == Role::kSeller;
  }
  return role == Role::kUser || role == Role::kSystem;
}

std::optional<Money> Money::parse(std::string_view raw) {
  std::string_view s = text::trim(raw);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;

  std::int64_t whole = 0;
  std::size_t i = 0;
  bool any_digit = false;
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 1000;
  for (; i < s.size() && s[i] != '.'; ++i) {
    const char c = s[i];
    if (c == ',') continue;
    if (c < '0' || c > '9') return std::nullopt;
    if (whole > kLimit) return std::nullopt;
    whole = whole * 10 + (c - '0');
    any_digit = true;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool round_up = false;
  if (i < s.size()) {
    ++i;  // '.'
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c < '0' || c > '9') return std::nullopt;
      any_digit = true;
      if (frac_digits < 2) {
        frac = frac * 10 + (c - '0');
        ++frac_digits;
      } else if (frac_digits == 2) {
        round_up = c >= '5';
        ++frac_digits;
      }
    }
  }
  if (!any_digit) return std::nullopt;
  while (frac_digits < 2) {
    frac *= 10;
    ++frac_digits;
  }
  std::int64_t cents = whole * 100 + frac + (round_up ? 1 : 0);
  return Money(negative ? -cents : cents);
}

std::string Money::to_string() const {
  const std::int64_t abs = cents_ < 0 ? -cents_ : cents_;
  std::string frac = std::to_string(abs % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (cents_ < 0 ? "-" : "") + std::to_string(abs / 100) + "." + frac;
}

std::string Money::to_display() const {
  if (cents_ % 100 == 0) return std::to_string(cents_ / 100);
  return to_string();
}

ParsedOutput ParsedOutput::generation_error(std::string reason, std::string raw) {
  ParsedOutput out;
  out.status = ParseStatus::kGenerationError;
  out.error_reason = std::move(reason);
  out.response = std::move(raw);
  return out;
}

}  // namespace proeval
