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

#include "proeval/parser.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "proeval/text.h"

namespace proeval {
namespace {

constexpr std::string_view kAnswer = "the answer is";
constexpr std::string_view kClarify = "the clarifying question is";
constexpr std::string_view kTherefore = "therefore,";
constexpr std::string_view kNextTopics = "the next topics are";
constexpr std::string_view kCurrentTopics = "the current topics are";
constexpr std::string_view kResponse = "the response is";
constexpr std::string_view kStrategies = "the most appropriate set of negotiation strategies is";
constexpr std::string_view kAct = "the most appropriate dialogue act is";
constexpr std::string_view kGoal = "to reach this goal,";

constexpr std::string_view kMissingMarker = "missing template marker";

// Straightened reply plus a lowercase copy with identical byte offsets.
struct Reply {
  std::string text;
  std::string lower;

  explicit Reply(std::string_view raw)
      : text(text::straighten_quotes(raw)), lower(text::to_lower_ascii(text)) {}

  std::size_t find(std::string_view marker, std::size_t from = 0) const {
    return lower.find(marker, from);
  }
};

bool is_quote(char c) { return c == '"' || c == '\''; }

// Text after a marker: leading colons and whitespace dropped, and one pair of
// wrapping quotes removed (closing quote = last occurrence of the opener).
std::string unwrap(std::string_view s) {
  s = text::trim(s);
  while (!s.empty() && s.front() == ':') s = text::trim(s.substr(1));
  if (!s.empty() && is_quote(s.front())) {
    const std::size_t close = s.rfind(s.front());
    if (close > 0) return std::string(text::trim(s.substr(1, close - 1)));
  }
  return std::string(s);
}

// Locates the bracketed list that follows `from`. Returns the body and sets
// `end` past the closing bracket.
std::optional<std::string> list_after(const std::string& s, std::size_t from,
                                      std::size_t& end) {
  std::size_t i = from;
  while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ':')) ++i;
  if (i >= s.size() || s[i] != '[') return std::nullopt;
  int depth = 0;
  char quote = 0;
  for (std::size_t j = i; j < s.size(); ++j) {
    const char c = s[j];
    if (quote) {
      // An apostrophe inside a word does not close a single-quoted item.
      if (c == quote && !(quote == '\'' && j + 1 < s.size() &&
                          std::isalpha(static_cast<unsigned char>(s[j + 1])) && j > 0 &&
                          std::isalpha(static_cast<unsigned char>(s[j - 1])))) {
        quote = 0;
      }
      continue;
    }
    if (is_quote(c)) {
      quote = c;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (--depth == 0) {
        end = j + 1;
        return s.substr(i + 1, j - i - 1);
      }
    }
  }
  return std::nullopt;
}

ParsedOutput fail(std::string_view reason, std::string_view raw) {
  return ParsedOutput::generation_error(std::string(reason), std::string(text::trim(raw)));
}

ParsedOutput standard(std::string_view raw) {
  ParsedOutput out;
  out.response = std::string(text::trim(raw));
  return out;
}

std::optional<std::string> thought_before(const Reply& r, std::string_view marker) {
  const std::size_t pos = r.find(marker);
  if (pos == std::string::npos) return std::nullopt;
  std::string t(text::trim(std::string_view(r.text).substr(0, pos)));
  if (t.empty()) return std::nullopt;
  return t;
}

ParsedOutput clarification_impl(SchemeKind scheme, std::string_view raw) {
  if (scheme == SchemeKind::kStandard) return standard(raw);
  const Reply r(raw);
  ParsedOutput out;

  // Under ProCoT the response markers are looked up after the verdict so
  // that the thought may mention them freely.
  const std::size_t therefore =
      scheme == SchemeKind::kProCoT ? r.find(kTherefore) : std::string::npos;
  const std::size_t search_from = therefore == std::string::npos ? 0 : therefore;
  const std::size_t answer = r.find(kAnswer, search_from);
  const std::size_t clarify = r.find(kClarify, search_from);
  if (answer == std::string::npos && clarify == std::string::npos) {
    return fail(kMissingMarker, raw);
  }
  std::size_t marker_pos;
  std::size_t marker_len;
  std::string_view marker_act;
  if (clarify == std::string::npos || (answer != std::string::npos && answer < clarify)) {
    marker_pos = answer;
    marker_len = kAnswer.size();
    marker_act = kActDirectAnswer;
  } else {
    marker_pos = clarify;
    marker_len = kClarify.size();
    marker_act = kActAskClarification;
  }
  if (answer != std::string::npos && clarify != std::string::npos) {
    out.warnings.push_back("both answer and clarifying-question markers present; first wins");
  }
  out.act = std::string(marker_act);
  out.response = unwrap(std::string_view(r.text).substr(marker_pos + marker_len));

  if (scheme == SchemeKind::kProCoT) {
    out.thought = thought_before(r, kTherefore);
    const std::size_t from = search_from;
    const std::string_view verdict_zone =
        std::string_view(r.lower).substr(from, marker_pos > from ? marker_pos - from : 0);
    std::optional<std::string> verdict;
    if (verdict_zone.find("not ambiguous") != std::string_view::npos ||
        verdict_zone.find("unambiguous") != std::string_view::npos ||
        verdict_zone.find("isn't ambiguous") != std::string_view::npos) {
      verdict = std::string(kActDirectAnswer);
    } else if (verdict_zone.find("ambiguous") != std::string_view::npos) {
      verdict = std::string(kActAskClarification);
    }
    if (therefore == std::string::npos) out.warnings.push_back("no 'Therefore,' before verdict");
    if (!verdict) {
      out.warnings.push_back("no ambiguity verdict; act taken from response marker");
    } else if (*verdict != *out.act) {
      out.warnings.push_back("inconsistent: verdict says " + *verdict + " but marker says " +
                             *out.act);
      out.act = verdict;
    }
  }
  return out;
}

ParsedOutput target_impl(SchemeKind scheme, std::string_view raw) {
  if (scheme == SchemeKind::kStandard) return standard(raw);
  const Reply r(raw);
  ParsedOutput out;

  std::size_t cursor = 0;
  if (scheme == SchemeKind::kProCoT) {
    const std::size_t cur = r.find(kCurrentTopics);
    if (cur == std::string::npos) {
      out.warnings.push_back("missing current-topics marker");
    } else {
      std::size_t end = 0;
      auto body = list_after(r.text, cur + kCurrentTopics.size(), end);
      if (!body) return fail("missing list brackets", raw);
      out.current_topics = split_bracket_list(*body);
      cursor = end;
    }
  }
  const std::size_t next = r.find(kNextTopics, cursor);
  if (next == std::string::npos) return fail(kMissingMarker, raw);
  std::size_t end = 0;
  auto body = list_after(r.text, next + kNextTopics.size(), end);
  if (!body) return fail("missing list brackets", raw);
  out.next_topics = split_bracket_list(*body);

  const std::size_t resp = r.find(kResponse, end);
  if (resp == std::string::npos) return fail(kMissingMarker, raw);
  out.response = unwrap(std::string_view(r.text).substr(resp + kResponse.size()));
  return out;
}

ParsedOutput negotiation_impl(SchemeKind scheme, std::string_view raw,
                              const VocabularyStore& vocab) {
  if (scheme == SchemeKind::kStandard) return standard(raw);
  const Reply r(raw);
  ParsedOutput out;

  const std::size_t strat = r.find(kStrategies);
  if (strat == std::string::npos) return fail(kMissingMarker, raw);
  std::size_t end = 0;
  auto strat_body = list_after(r.text, strat + kStrategies.size(), end);
  if (!strat_body) return fail("missing list brackets", raw);

  const std::size_t act = r.find(kAct, end);
  if (act == std::string::npos) return fail(kMissingMarker, raw);
  auto act_body = list_after(r.text, act + kAct.size(), end);
  if (!act_body) return fail("missing list brackets", raw);

  const std::size_t resp = r.find(kResponse, end);
  if (resp == std::string::npos) return fail(kMissingMarker, raw);

  const Vocabulary& strategies = vocab.strategies();
  std::vector<std::string> tokens;
  for (const auto& item : split_bracket_list(*strat_body)) {
    if (auto t = strategies.match(item)) {
      tokens.push_back(*t);
    } else {
      out.unrecognized_strategies.push_back(item);
    }
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  out.strategies = std::move(tokens);

  const Vocabulary& acts = vocab.acts(TaskKind::kNegotiation);
  std::set<std::string> act_tokens;
  for (const auto& item : split_bracket_list(*act_body)) {
    if (auto t = acts.match(item)) {
      act_tokens.insert(*t);
    } else {
      out.warnings.push_back("unrecognized act '" + item + "'");
    }
  }
  if (act_tokens.size() != 1) return fail("act cardinality", raw);
  out.act = *act_tokens.begin();

  out.response = unwrap(std::string_view(r.text).substr(resp + kResponse.size()));
  if (scheme == SchemeKind::kProCoT) {
    out.thought = thought_before(r, kGoal);
    if (!out.thought) out.warnings.push_back("missing 'To reach this goal,' marker");
  }
  return out;
}

template <typename Fn>
ParsedOutput total(std::string_view raw, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return fail(std::string("parser failure: ") + e.what(), raw);
  }
}

std::string quoted_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + items[i] + "\"";
  }
  return out + "]";
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

TemplateGrammar grammar_for(TaskKind task, SchemeKind scheme) {
  TemplateGrammar g;
  g.task = task;
  g.scheme = scheme;
  g.fields = {"response"};
  if (scheme == SchemeKind::kStandard) return g;
  auto add = [&](std::string_view m) { g.markers.emplace_back(m); };
  switch (task) {
    case TaskKind::kClarification:
      if (scheme == SchemeKind::kProCoT) {
        add(kTherefore);
        add("the question is ambiguous.");
        add("the question is not ambiguous.");
        g.fields.push_back("thought");
      }
      add(kAnswer);
      add(kClarify);
      g.fields.push_back("act");
      break;
    case TaskKind::kTargetGuided:
      if (scheme == SchemeKind::kProCoT) {
        add(kCurrentTopics);
        g.fields.push_back("current_topics");
      }
      add(kNextTopics);
      add(kResponse);
      g.fields.push_back("next_topics");
      break;
    case TaskKind::kNegotiation:
      if (scheme == SchemeKind::kProCoT) {
        add(kGoal);
        g.fields.push_back("thought");
      }
      add(kStrategies);
      add(kAct);
      add(kResponse);
      g.fields.push_back("strategies");
      g.fields.push_back("act");
      break;
  }
  return g;
}

ParsedOutput parse_clarification(SchemeKind scheme, std::string_view raw) {
  return total(raw, [&] { return clarification_impl(scheme, raw); });
}

ParsedOutput parse_target(SchemeKind scheme, std::string_view raw) {
  return total(raw, [&] { return target_impl(scheme, raw); });
}

ParsedOutput parse_negotiation(SchemeKind scheme, std::string_view raw,
                               const VocabularyStore& vocab) {
  return total(raw, [&] { return negotiation_impl(scheme, raw, vocab); });
}

ParsedOutput parse_output(TaskKind task, SchemeKind scheme, std::string_view raw,
                          const VocabularyStore& vocab) {
  switch (task) {
    case TaskKind::kClarification: return parse_clarification(scheme, raw);
    case TaskKind::kTargetGuided: return parse_target(scheme, raw);
    case TaskKind::kNegotiation: return parse_negotiation(scheme, raw, vocab);
  }
  return fail("unknown task", raw);
}

std::vector<std::string> split_bracket_list(std::string_view body) {
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  char quote = 0;
  auto flush = [&] {
    std::string_view t = text::trim(cur);
    if (t.size() >= 2 && is_quote(t.front()) && t.back() == t.front()) {
      t = text::trim(t.substr(1, t.size() - 2));
    }
    if (!t.empty()) items.emplace_back(t);
    cur.clear();
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (quote) {
      const bool apostrophe = quote == '\'' && i > 0 && i + 1 < body.size() &&
                              std::isalpha(static_cast<unsigned char>(body[i - 1])) &&
                              std::isalpha(static_cast<unsigned char>(body[i + 1]));
      if (c == quote && !apostrophe) quote = 0;
      cur += c;
      continue;
    }
    if (is_quote(c) && text::trim(cur).empty()) {
      quote = c;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    } else if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  return items;
}

std::vector<Money> extract_prices(std::string_view text) {
  static const std::set<std::string, std::less<>> kCues = {
      "price", "pay",  "paying", "offer", "offering", "go",     "sell",  "selling", "buy",
      "buying", "for", "at",     "lowest", "highest", "accept", "take",  "do",      "deal",
      "counter", "asking", "ask", "budget", "than",   "about",  "around", "only",   "just",
      "cost",  "costs", "worth", "make",  "meet",     "down",   "up",    "to"};
  static const std::set<std::string, std::less<>> kAfterCues = {"dollars", "dollar", "bucks",
                                                                "usd"};
  static const std::set<std::string, std::less<>> kUnits = {
      "year",  "years", "month", "months", "week",  "weeks",  "day",   "days",   "hour",
      "hours", "minute", "minutes", "mile", "miles", "inch",  "inches", "feet",  "foot",
      "gb",    "tb",    "mb",    "percent", "items", "pieces", "people", "times", "kg",
      "lbs",   "pounds", "mm",   "cm",    "km",    "seats",  "doors", "bedrooms", "rooms"};

  std::vector<Money> out;
  const std::string lower = text::to_lower_ascii(text);

  auto word_before = [&](std::size_t pos, int skip) {
    // The (skip+1)-th word ending before `pos`.
    std::size_t i = pos;
    std::string w;
    for (int k = 0; k <= skip; ++k) {
      while (i > 0 && !is_word_char(lower[i - 1])) --i;
      std::size_t e = i;
      while (i > 0 && is_word_char(lower[i - 1])) --i;
      w = lower.substr(i, e - i);
      if (w.empty()) return w;
    }
    return w;
  };
  auto word_after = [&](std::size_t pos) {
    std::size_t i = pos;
    while (i < lower.size() && lower[i] == ' ') ++i;
    std::size_t b = i;
    while (i < lower.size() && is_word_char(lower[i])) ++i;
    return lower.substr(b, i - b);
  };

  std::size_t i = 0;
  while (i < lower.size()) {
    const bool dollar = lower[i] == '$';
    const std::size_t start = dollar ? i + 1 : i;
    if (start >= lower.size() || !std::isdigit(static_cast<unsigned char>(lower[start])) ||
        (!dollar && i > 0 && (is_word_char(lower[i - 1]) || lower[i - 1] == '.' ||
                              lower[i - 1] == ',' || lower[i - 1] == '$'))) {
      ++i;
      continue;
    }
    std::size_t j = start;
    while (j < lower.size() &&
           (std::isdigit(static_cast<unsigned char>(lower[j])) ||
            (lower[j] == ',' && j + 1 < lower.size() &&
             std::isdigit(static_cast<unsigned char>(lower[j + 1]))))) {
      ++j;
    }
    if (j + 1 < lower.size() && lower[j] == '.' &&
        std::isdigit(static_cast<unsigned char>(lower[j + 1]))) {
      ++j;
      while (j < lower.size() && std::isdigit(static_cast<unsigned char>(lower[j]))) ++j;
    }
    const std::string number = lower.substr(start, j - start);
    const bool glued = j < lower.size() && is_word_char(lower[j]);
    i = j;
    if (glued) continue;  // "6th", "100m"

    bool take = dollar;
    if (!take) {
      const std::string next = word_after(j);
      if (kUnits.count(next)) continue;
      take = kAfterCues.count(next) > 0;
      for (int k = 0; k < 3 && !take; ++k) {
        const std::string w = word_before(start, k);
        if (w.empty()) break;
        if (kCues.count(w)) take = true;
      }
    }
    if (!take) continue;
    if (auto m = Money::parse(number)) out.push_back(*m);
  }
  return out;
}

std::string render_completion(TaskKind task, SchemeKind scheme, const ParsedOutput& out,
                              const VocabularyStore& vocab) {
  if (scheme == SchemeKind::kStandard) return out.response;
  const std::string quoted_response = "\"" + out.response + "\"";
  switch (task) {
    case TaskKind::kClarification: {
      const bool clarify = out.act && *out.act == kActAskClarification;
      std::string marker = clarify ? "The clarifying question is " : "The answer is ";
      if (scheme == SchemeKind::kProactive) return marker + quoted_response;
      std::string s;
      if (out.thought) s = *out.thought + " ";
      s += clarify ? "Therefore, the question is ambiguous. "
                   : "Therefore, the question is not ambiguous. ";
      return s + marker + quoted_response;
    }
    case TaskKind::kTargetGuided: {
      const std::string next = quoted_list(out.next_topics.value_or(std::vector<std::string>{}));
      if (scheme == SchemeKind::kProactive) {
        return "The next topics are " + next + ". The response is " + quoted_response;
      }
      return "The current topics are " +
             quoted_list(out.current_topics.value_or(std::vector<std::string>{})) +
             ". To bridge the current topics with the target topics, the next topics are " +
             next + ". Based on the predicted next topics, the response is " + quoted_response;
    }
    case TaskKind::kNegotiation: {
      std::vector<std::string> strategies;
      for (const auto& t : out.strategies.value_or(std::vector<std::string>{})) {
        strategies.push_back(vocab.strategies().display(t));
      }
      std::vector<std::string> acts;
      if (out.act) acts.push_back(vocab.acts(TaskKind::kNegotiation).display(*out.act));
      std::string body = "the most appropriate set of negotiation strategies is " +
                         quoted_list(strategies) +
                         " and the most appropriate dialogue act is " + quoted_list(acts) +
                         ". Based on the selected negotiation strategies and dialogue act, "
                         "the response is " +
                         quoted_response;
      if (scheme == SchemeKind::kProactive) {
        body[0] = 'T';
        return body;
      }
      std::string s;
      if (out.thought) s = *out.thought + " ";
      return s + "To reach this goal, " + body;
    }
  }
  return out.response;
}

}  // namespace proeval
