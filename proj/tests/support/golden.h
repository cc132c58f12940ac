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

// Reference prompt texts and worked demonstrations, copied byte for byte.

#include <string_view>

namespace proeval::golden {

inline constexpr std::string_view kClarificationStandard =
    "Given the document and the conversation history, generate the response.";

inline constexpr std::string_view kClarificationProactive =
    "Given the document and the conversation history, answer the question or ask a clarifying "
    "question. The response should start with \"The answer is\" or \"The clarifying question "
    "is\".";

inline constexpr std::string_view kClarificationProCoT =
    "Given the document and the conversation history, first identify whether the question is "
    "ambiguous or not. If it is ambiguous, ask a clarifying question. If it is not ambiguous, "
    "answer the question. The response should start with the ambiguity analysis of the "
    "question and then follow by \"Therefore, the question is not ambiguous. The answer is\" or "
    "\"Therefore, the question is ambiguous. The clarifying question is\".";

inline constexpr std::string_view kTargetStandard =
    "Given the target topic and the conversation history, generate the response.";

inline constexpr std::string_view kTargetProactive =
    "Given the target topic and the conversation history, predict the appropriate next topics "
    "that can bridge the current conversation topics to approach the target topics smoothly. "
    "Then based on the predicted next topics, generate the response. Please reply by "
    "completing the output template \"The next topics are []. The response is\".";

inline constexpr std::string_view kTargetProCoT =
    "Given the target topic and the conversation history, consider the relationship between "
    "the current conversation topics and the target topics, and then predict the appropriate "
    "next topics that can bridge the current conversation topics to approach the target topics "
    "smoothly. Then based on the predicted next topics, generate the response. Please reply by "
    "completing the output template \"The current topics are []. To bridge the current topics "
    "with the target topics, the next topics are []. Based on the predicted next topics, the "
    "response is\".";

inline constexpr std::string_view kNegotiationStandard =
    "Assume you are the seller. Given the item description, the target selling price, and the "
    "conversation history, generate the response.";

inline constexpr std::string_view kNegotiationProactive =
    "Assume you are the seller. Given the item description, the target selling price, and the "
    "conversation history, in order to reach a better deal with the buyer, first select the "
    "most appropriate set of negotiation strategies and the most appropriate dialogue act to "
    "reach the bargain price. Based on the selected negotiation strategies and dialogue act, "
    "generate the response. The reply should be in the form \"The most appropriate set of "
    "negotiation strategies is [] and the most appropriate dialogue act is []. Based on the "
    "selected negotiation strategies and dialogue act, the response is\"";

inline constexpr std::string_view kNegotiationProCoT =
    "Assume you are the seller. Given the item description, the target selling price, and the "
    "conversation history, in order to reach a better deal with the buyer, first analyse the "
    "current negotiation progress and consider an appropriate negotiation goal, then select "
    "the most appropriate set of negotiation strategies and the most appropriate dialogue act "
    "to reach the bargain price. Based on the selected negotiation strategies and dialogue act, "
    "generate a response. The reply should start with the analysis of the current negotiation "
    "progress and an appropriate goal, and then follow by \"To reach this goal, the most "
    "appropriate set of negotiation strategies is [] and the most appropriate dialogue act is "
    "[]. Based on the selected negotiation strategies and dialogue act, the response is\"";

inline constexpr std::string_view kActsPrefix =
    "Pre-defined Dialogue Acts: [Answer a question, Proposing a counter price, Accept the offer, ";
inline constexpr std::string_view kStrategiesPrefix =
    "Pre-defined Negotiation Strategies: [Communicate politely, Build rapport, Show dominance, ";

inline constexpr std::string_view kTargetSampleBlock =
    "Target topic: \"Chicken\"\n"
    "Conversation history: [\"User\": \"I also remodel homes when I am not out bow hunting.\", "
    "\"System\": \"That's neat. When I was in high school I placed 6th in 100m dash!\", "
    "\"User\": \"That's awesome. Do you have a favorite season or time of year?\"]";

inline constexpr std::string_view kClarificationDemoStandard = "Do you mean the first book?";
inline constexpr std::string_view kClarificationDemoProactive =
    "The clarifying question is \"Do you mean the first book?\"";
inline constexpr std::string_view kClarificationDemoProCoT =
    "There are two books that book that Angie's mother found. It is uncertain which book is "
    "referred to. Therefore, the question is ambiguous. The clarifying question is \"Do you "
    "mean the first book?\"";

inline constexpr std::string_view kTargetDemoStandard =
    "I do not. But I do have a favorite meat since that is all I eat exclusively.";
inline constexpr std::string_view kTargetDemoProactive =
    "The next topics are [\"eat\", \"meat\"]. The response is \"I do not. But I do have a "
    "favorite meat since that is all I eat exclusively.\"";
inline constexpr std::string_view kTargetDemoProCoT =
    "The current topics are [\"season\", \"time\", \"year\"]. To bridge the current topics "
    "with the target topics, the next topics are [\"eat\", \"meat\"]. Based on the predicted "
    "next topics, the response is \"I do not. But I do have a favorite meat since that is all "
    "I eat exclusively.\"";

inline constexpr std::string_view kNegotiationDemoStandard =
    "I think the lowest I would want to go is 8.";
inline constexpr std::string_view kNegotiationDemoProactive =
    "The most appropriate set of negotiation strategies is [\"Propose price\", \"Show "
    "dominance\", 'Certainty words'] and the most appropriate dialogue act is [\"Proposing a "
    "counter price\"]. Based on the selected negotiation strategies and dialogue act, the "
    "response is \"I think the lowest I would want to go is 8.\"";
inline constexpr std::string_view kNegotiationDemoProCoT =
    "The buyer proposes a low price, which is unacceptable. The next step should assertively "
    "raise the bargain price.  To reach this goal, the most appropriate set of negotiation "
    "strategies is [\"Propose price\", \"Show dominance\", 'Certainty words'] and the most "
    "appropriate dialogue act is [\"Proposing a counter price\"]. Based on the selected "
    "negotiation strategies and dialogue act, the response is \"I think the lowest I would "
    "want to go is 8.\"";

}  // namespace proeval::golden
