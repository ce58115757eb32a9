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

#include "cnadapt/channel.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "cnadapt/cnet_io.h"
#include "cnadapt/errors.h"
#include "instance.h"

namespace cnadapt {
namespace {

class TwoBinFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    std::istringstream in(
        "CONV fx\nNET u1 2\nBIN a:0.6 b:0.4\nBIN a:0.7 c:0.3\n");
    convs_.push_back(parse_conversation(in, vocab_));
    a_ = *vocab_.find("a");
    b_ = *vocab_.find("b");
    c_ = *vocab_.find("c");
  }
  Vocabulary vocab_;
  std::vector<Conversation> convs_;
  WordId a_ = 0, b_ = 0, c_ = 0;
};

TEST_F(TwoBinFixture, HandCountedTable) {
  const ChannelModel cm = estimate_channel(convs_);
  EXPECT_EQ(cm.prob(a_, a_), 0.5);
  EXPECT_EQ(cm.prob(b_, a_), 0.25);
  EXPECT_EQ(cm.prob(c_, a_), 0.25);
  EXPECT_EQ(cm.prob(a_, b_), 0.5);
  EXPECT_EQ(cm.prob(b_, b_), 0.5);
  EXPECT_EQ(channel_prob(cm, b_, a_), 0.25);
}

TEST_F(TwoBinFixture, FileContainsSelfPairLine) {
  std::ostringstream out;
  write_channel(out, estimate_channel(convs_), vocab_);
  EXPECT_NE(out.str().find("\na a 0.5\n"), std::string::npos);
  EXPECT_EQ(out.str().rfind("CHANNEL 3\n", 0), 0u);
}

TEST_F(TwoBinFixture, RoundTrip) {
  const ChannelModel cm = estimate_channel(convs_);
  std::ostringstream out;
  write_channel(out, cm, vocab_);
  std::istringstream in(out.str());
  Vocabulary reread_vocab = vocab_;
  EXPECT_EQ(read_channel(in, reread_vocab), cm);
}

TEST(ChannelTest, IdentityBackoffForUnseenWords) {
  const ChannelModel cm;
  EXPECT_EQ(cm.prob(4, 4), 1.0);
  EXPECT_EQ(cm.prob(3, 4), 0.0);
}

TEST(ChannelTest, SingletonBinsGiveIdentity) {
  Vocabulary vocab;
  std::istringstream in("CONV c\nNET u 3\nBIN x:1\nBIN y:0.9\nBIN x:1\n");
  const std::vector<Conversation> convs{parse_conversation(in, vocab)};
  const ChannelModel cm = estimate_channel(convs);
  EXPECT_EQ(cm.prob(0, 0), 1.0);
  EXPECT_EQ(cm.prob(1, 1), 1.0);
  EXPECT_EQ(cm.row(0)->size(), 1u);
}

TEST(ChannelTest, PruningAppliesBeforeCounting) {
  Vocabulary vocab;
  // b is under 5% of a's posterior and never counted.
  std::istringstream in("CONV c\nNET u 1\nBIN a:0.97 b:0.03\n");
  const std::vector<Conversation> convs{parse_conversation(in, vocab)};
  const ChannelModel cm = estimate_channel(convs);
  EXPECT_EQ(cm.num_rows(), 1u);
  EXPECT_EQ(cm.prob(0, 0), 1.0);
}

TEST(ChannelTest, EmptyCorpusIsValidationError) {
  EXPECT_THROW(estimate_channel({}), ValidationError);
}

TEST(ChannelTest, ConstructorRejectsBadRows) {
  std::map<WordId, ChannelModel::Row> rows;
  rows[0] = {{0, -0.5}, {1, 1.5}};
  EXPECT_THROW(ChannelModel{rows}, ValidationError);
}

TEST(ChannelTest, RowSumsAndOrderInvarianceOnRandomCorpora) {
  for (int k = 0; k < 20; ++k) {
    testing::InstanceShape shape;
    shape.vocab_size = 30;
    shape.num_bins = 100;
    shape.max_bin_width = 12;
    std::vector<Conversation> convs;
    for (int j = 0; j < 4; ++j) {
      convs.push_back(
          testing::random_instance(shape, 100 * k + j).conversation());
    }
    const ChannelModel cm = estimate_channel(convs);
    for (const auto& [w, row] : cm.rows()) {
      double s = 0.0;
      for (const auto& [v, p] : row) {
        EXPECT_GT(p, 0.0);
        s += p;
      }
      EXPECT_NEAR(s, 1.0, 1e-9);
      EXPECT_GT(cm.prob(w, w), 0.0);  // self-pairs always counted
    }
    std::reverse(convs.begin(), convs.end());
    EXPECT_EQ(estimate_channel(convs), cm);
  }
}

}  // namespace
}  // namespace cnadapt
