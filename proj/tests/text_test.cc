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

#include "proeval/text.h"

#include <gtest/gtest.h>

namespace proeval {
namespace {

TEST(Text, Canonicalize) {
  EXPECT_EQ(text::canonicalize("Propose_price!"), "propose price");
  EXPECT_EQ(text::canonicalize("  Counter-Price  "), "counter price");
  EXPECT_EQ(text::canonicalize("A   b\tc"), "a b c");
}

TEST(Text, StraightenQuotes) {
  EXPECT_EQ(text::straighten_quotes("\xE2\x80\x9CHi\xE2\x80\x9D it\xE2\x80\x99s"), "\"Hi\" it's");
}

TEST(Text, TokenizeDetachesPunctuation) {
  const std::vector<std::string> want = {"hello", ",", "world", "!"};
  EXPECT_EQ(text::tokenize("Hello, World!"), want);
  // U+00A0 no-break space separates tokens.
  EXPECT_EQ(text::tokenize("a\xC2\xA0" "b").size(), 2u);
}

TEST(Text, SplitWhitespaceKeepsCase) {
  const std::vector<std::string> want = {"Hi,", "There"};
  EXPECT_EQ(text::split_whitespace(" Hi,\nThere "), want);
}

TEST(Text, Trim) {
  EXPECT_EQ(text::trim("  x y \n"), "x y");
  EXPECT_EQ(text::trim(""), "");
}

}  // namespace
}  // namespace proeval
