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

#include "cnadapt/eval.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cnadapt/errors.h"

namespace cnadapt {
namespace {

ReferenceCorpus corpus_of(const std::string& text, const Vocabulary& vocab) {
  std::istringstream in(text);
  return read_reference(in, vocab);
}

Vocabulary abcd() {
  Vocabulary v;
  for (const char* w : {"a", "b", "c", "d"}) v.intern(w);
  return v;
}

TEST(ReferenceCorpusTest, CountsMatchTokens) {
  const Vocabulary vocab = abcd();
  const ReferenceCorpus c = corpus_of("a b\nb b d\n", vocab);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(c.count(1), 3u);
  EXPECT_EQ(c.count(2), 0u);
  EXPECT_EQ(c.max_count(), 3u);
  std::map<WordId, std::uint64_t> recount;
  for (WordId w : c.tokens()) ++recount[w];
  EXPECT_EQ(recount, c.counts());
}

TEST(ReferenceCorpusTest, OovMapsToUnknownOrFails) {
  Vocabulary with_unk = abcd();
  with_unk.intern(kUnknownWord);
  const ReferenceCorpus c = corpus_of("a zebra", with_unk);
  EXPECT_EQ(c.count(*with_unk.find(kUnknownWord)), 1u);
  try {
    corpus_of("a zebra", abcd());
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("zebra"), std::string::npos);
  }
}

TEST(PerplexityTest, UniformModelGivesVocabularySize) {
  const Vocabulary vocab = abcd();
  const std::vector<double> uniform(4, 0.25);
  EXPECT_NEAR(perplexity(uniform, corpus_of("a a a c d b", vocab)), 4.0,
              1e-12);
}

TEST(PerplexityTest, TwoWordExample) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.5, 0.5, 0.0, 0.0};
  EXPECT_NEAR(perplexity(p, corpus_of("a b", vocab)), 2.0, 1e-12);
}

TEST(PerplexityTest, ZeroProbabilityTokenNamesTheWord) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.5, 0.5, 0.0, 0.0};
  try {
    perplexity(p, corpus_of("a c", vocab), &vocab);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos)
        << e.what();
  }
}

TEST(PerplexityTest, InvariantToTokenOrder) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(perplexity(p, corpus_of("a b c d d", vocab)),
              perplexity(p, corpus_of("d c d b a", vocab)), 1e-12);
}

TEST(ConstrainedPerplexityTest, ThresholdOneKeepsSingletons) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const ReferenceCorpus c = corpus_of("a a b", vocab);
  EXPECT_NEAR(constrained_perplexity(p, c, 1), 1.0 / 0.2, 1e-12);
}

TEST(ConstrainedPerplexityTest, VacuousThresholdEqualsUnconstrained) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const ReferenceCorpus c = corpus_of("a a b c c c d", vocab);
  const double full = perplexity(p, c);
  EXPECT_EQ(constrained_perplexity(p, c, c.max_count()), full);
  EXPECT_EQ(constrained_perplexity(p, c, 3), full);
  EXPECT_EQ(constrained_perplexity(p, c, kNoThreshold), full);
}

TEST(ConstrainedPerplexityTest, NoQualifyingTokenOrZeroThresholdFails) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p(4, 0.25);
  const ReferenceCorpus c = corpus_of("a a b b", vocab);
  EXPECT_THROW(constrained_perplexity(p, c, 1), EvaluationError);
  EXPECT_THROW(constrained_perplexity(p, c, 0), std::invalid_argument);
}

TEST(ConstrainedPerplexityTest, DominatingImprovementLowersBothMetrics) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::uniform_int_distribution<int> word(0, 5);
  Vocabulary vocab;
  for (int w = 0; w < 8; ++w) vocab.intern("w" + std::to_string(w));
  for (int k = 0; k < 100; ++k) {
    // Words 6 and 7 never occur in the reference.
    std::string text;
    for (int n = 0; n < 20; ++n) text += "w" + std::to_string(word(rng)) + " ";
    const ReferenceCorpus c = corpus_of(text, vocab);
    std::vector<double> p(8);
    double s = 0.0;
    for (double& x : p) s += (x = unit(rng));
    for (double& x : p) x /= s;
    const WordId target = c.tokens()[0];
    const std::uint64_t thr = c.count(target);
    auto better = p;
    const double gain = 0.5 * std::min(p[6], p[7]);
    better[target] += 2 * gain;
    better[6] -= gain;
    better[7] -= gain;
    EXPECT_LT(perplexity(better, c), perplexity(p, c));
    EXPECT_LT(constrained_perplexity(better, c, thr),
              constrained_perplexity(p, c, thr));
  }
}

TEST(UnigramIoTest, RoundTrip) {
  const Vocabulary vocab = abcd();
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  std::ostringstream out;
  write_unigram(out, p, vocab);
  EXPECT_EQ(out.str(), "UNIGRAM 4\na 0.1\nb 0.2\nc 0.3\nd 0.4\n");
  std::istringstream in(out.str());
  Vocabulary reread_vocab;
  const auto q = read_unigram(in, reread_vocab);
  EXPECT_EQ(reread_vocab.words(), vocab.words());
  for (int w = 0; w < 4; ++w) EXPECT_NEAR(q[w], p[w], 1e-15);
}

TEST(UnigramIoTest, RejectsBadSum) {
  Vocabulary vocab;
  std::istringstream in("UNIGRAM 2\na 0.5\nb 0.7\n");
  EXPECT_THROW(read_unigram(in, vocab), ValidationError);
}

}  // namespace
}  // namespace cnadapt
