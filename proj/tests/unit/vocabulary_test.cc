// Copyright 2026 The cnadapt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cnadapt/vocabulary.h"

#include <gtest/gtest.h>

#include <stdexcept>

namespace cnadapt {
namespace {

TEST(VocabularyTest, InternAssignsDenseIdsInFirstSeenOrder) {
  Vocabulary v;
  EXPECT_TRUE(v.empty());
  EXPECT_EQ(v.intern("b"), 0u);
  EXPECT_EQ(v.intern("a"), 1u);
  EXPECT_EQ(v.intern("b"), 0u);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.word(1), "a");
  EXPECT_EQ(v.words(), (std::vector<std::string>{"b", "a"}));
}

TEST(VocabularyTest, FindDoesNotIntern) {
  Vocabulary v;
  v.intern("x");
  EXPECT_EQ(v.find("x"), WordId{0});
  EXPECT_FALSE(v.find("y").has_value());
  EXPECT_EQ(v.size(), 1u);
}

TEST(VocabularyTest, UnknownIdThrows) {
  Vocabulary v;
  EXPECT_THROW(v.word(0), std::out_of_range);
}

}  // namespace
}  // namespace cnadapt
