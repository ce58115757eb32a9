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

#include "cnadapt/confusion_network.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "cnadapt/errors.h"

namespace cnadapt {
namespace {

constexpr WordId kA = 0, kB = 1, kC = 2;

TEST(BinTest, CanonicalOrderIsPosteriorDescendingThenId) {
  const Bin b = Bin::FromCells({{5, 0.2}, {3, 0.2}, {9, 0.6}});
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b.cells()[0].word, 9u);
  EXPECT_EQ(b.cells()[1].word, 3u);
  EXPECT_EQ(b.cells()[2].word, 5u);
}

TEST(BinTest, OneBestTieBreaksOnLowestId) {
  const Bin b = Bin::FromCells({{7, 0.5}, {4, 0.5}});
  EXPECT_EQ(b.one_best().word, 4u);
}

TEST(BinTest, RejectsInvalidCells) {
  EXPECT_THROW(Bin::FromCells({}), ValidationError);
  EXPECT_THROW(Bin::FromCells({{kA, 0.0}}), ValidationError);
  EXPECT_THROW(Bin::FromCells({{kA, 1.2}}), ValidationError);
  EXPECT_THROW(Bin::FromCells({{kA, 0.6}, {kB, 0.6}}), ValidationError);
  EXPECT_THROW(Bin::FromCells({{kA, 0.3}, {kA, 0.3}}), ValidationError);
}

TEST(BinTest, PosteriorSumAndContains) {
  const Bin b = Bin::FromCells({{kA, 0.6}, {kB, 0.3}});
  EXPECT_DOUBLE_EQ(b.posterior_sum(), 0.9);
  EXPECT_TRUE(b.contains(kB));
  EXPECT_FALSE(b.contains(kC));
}

TEST(ConversationTest, TotalBinsAcrossNetworks) {
  const Bin b = Bin::FromCells({{kA, 1.0}});
  const Conversation conv("c", {{"u1", {b, b}}, {"u2", {b}}});
  EXPECT_EQ(conv.total_bins(), 3u);
  std::size_t seen = 0;
  conv.for_each_bin([&](const Bin&) { ++seen; });
  EXPECT_EQ(seen, 3u);
}

TEST(ConversationTest, RejectsEmptyNetwork) {
  EXPECT_THROW(Conversation("c", {{"u1", {}}}), ValidationError);
}

TEST(PruneTest, RelativeFloorDropsSmallPosteriors) {
  // 0.03 < 5% of 0.8 = 0.04 is dropped, 0.05 is kept.
  const Bin b = Bin::FromCells({{kA, 0.8}, {kC, 0.05}, {kB, 0.03}});
  const Bin p = prune_bin(b, 0.05, 10);
  EXPECT_EQ(p, Bin::FromCells({{kA, 0.8}, {kC, 0.05}}));
}

TEST(PruneTest, MaxWordsKeepsLowestIdsOnTies) {
  std::vector<Cell> cells;
  for (WordId w = 0; w < 12; ++w) cells.push_back({w, 1.0 / 12});
  const Bin p = prune_bin(Bin::FromCells(cells), 0.05, 10);
  ASSERT_EQ(p.size(), 10u);
  for (WordId w = 0; w < 10; ++w) EXPECT_TRUE(p.contains(w));
  // Posteriors are not renormalized.
  EXPECT_DOUBLE_EQ(p.cells()[0].posterior, 1.0 / 12);
}

TEST(PruneTest, SingletonSurvivesAnyParameters) {
  const Bin b = Bin::FromCells({{kA, 1.0}});
  EXPECT_EQ(prune_bin(b, 1.0, 1), b);
  EXPECT_EQ(prune_bin(b, 0.0, 10), b);
}

TEST(PruneTest, RejectsBadParameters) {
  const Bin b = Bin::FromCells({{kA, 1.0}});
  EXPECT_THROW(prune_bin(b, -0.1, 10), std::invalid_argument);
  EXPECT_THROW(prune_bin(b, 0.05, 0), std::invalid_argument);
}

TEST(PruneTest, RandomBinsPrunedToSubsetAndIdempotent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::uniform_int_distribution<int> width(1, 15);
  for (int k = 0; k < 300; ++k) {
    std::vector<Cell> cells;
    double total = 0.0;
    const int n = width(rng);
    for (int j = 0; j < n; ++j) {
      cells.push_back({WordId(j), unit(rng)});
      total += cells.back().posterior;
    }
    for (auto& c : cells) c.posterior /= total;
    const Bin b = Bin::FromCells(cells);
    const Bin p = prune_bin(b, 0.05, 10);
    ASSERT_GE(p.size(), 1u);
    ASSERT_LE(p.size(), 10u);
    EXPECT_EQ(p.one_best(), b.one_best());
    for (const Cell& c : p.cells()) {
      EXPECT_TRUE(b.contains(c.word));
      EXPECT_GE(c.posterior, 0.05 * b.one_best().posterior);
    }
    EXPECT_EQ(prune_bin(p, 0.05, 10), p);
  }
}

TEST(CountsTest, ExpectedCountsSumPosteriors) {
  const Conversation conv(
      "c", {{"u", {Bin::FromCells({{kA, 0.6}, {kB, 0.4}}),
                   Bin::FromCells({{kA, 0.7}, {kC, 0.3}})}}});
  const WordCounts tf = expected_counts(conv);
  EXPECT_DOUBLE_EQ(tf.at(kA), 1.3);
  EXPECT_DOUBLE_EQ(tf.at(kB), 0.4);
  EXPECT_DOUBLE_EQ(tf.at(kC), 0.3);
  const WordCounts best = one_best_counts(conv);
  EXPECT_EQ(best.size(), 1u);
  EXPECT_DOUBLE_EQ(best.at(kA), 2.0);
}

TEST(CountsTest, SingletonBinCountsOne) {
  const Conversation conv("c", {{"u", {Bin::FromCells({{kA, 1.0}})}}});
  EXPECT_DOUBLE_EQ(expected_counts(conv).at(kA), 1.0);
}

}  // namespace
}  // namespace cnadapt
