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

#include "cnadapt/synth.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cnadapt/cnet_io.h"
#include "cnadapt/errors.h"

namespace cnadapt {
namespace {

SynthSpec small_spec() {
  SynthSpec spec;
  spec.num_topics = 3;
  spec.vocab_size = 30;
  spec.lambda_true = {0.5, 0.3, 0.2};
  spec.num_bins = 500;
  spec.seed = 42;
  return spec;
}

TEST(SynthTest, NoiselessChannelGivesCertainSingletons) {
  SynthSpec spec = small_spec();
  spec.channel_noise = 0.0;
  const SynthSample s = sample_conversation(spec);
  std::size_t i = 0;
  s.conversation.for_each_bin([&](const Bin& b) {
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b.one_best().posterior, 1.0);
    EXPECT_EQ(b.one_best().word, s.truth.references[i]);
    ++i;
  });
  EXPECT_EQ(i, spec.num_bins);
}

TEST(SynthTest, OneHotLambdaFixesTopic) {
  SynthSpec spec = small_spec();
  spec.lambda_true = {0.0, 1.0, 0.0};
  const SynthSample s = sample_conversation(spec);
  for (std::size_t t : s.truth.topic_per_bin) EXPECT_EQ(t, 1u);
}

TEST(SynthTest, DeterministicGivenSeed) {
  const SynthSpec spec = small_spec();
  const Vocabulary vocab = synth_vocabulary(spec.vocab_size);
  const std::string a =
      serialize_conversation(sample_conversation(spec).conversation, vocab);
  const std::string b =
      serialize_conversation(sample_conversation(spec).conversation, vocab);
  EXPECT_EQ(a, b);
  SynthSpec other = spec;
  other.seed = 43;
  EXPECT_NE(a, serialize_conversation(sample_conversation(other).conversation,
                                      vocab));
  // Conversation index k uses seed ^ k.
  SynthSpec xored = spec;
  xored.seed = spec.seed ^ 3;
  EXPECT_EQ(sample_conversation(spec, 3).truth.references,
            sample_conversation(xored, 0).truth.references);
  EXPECT_EQ(sample_conversation(spec, 3).conversation.id(), "conv3");
}

TEST(SynthTest, TruthIsWellFormed) {
  const SynthSpec spec = small_spec();
  const SynthSample s = sample_conversation(spec);
  EXPECT_EQ(s.truth.references.size(), spec.num_bins);
  EXPECT_EQ(s.truth.topics.num_topics(), 3u);
  for (const auto& [w, row] : s.truth.channel.rows()) {
    double sum = 0.0;
    for (const auto& [v, p] : row) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_NEAR(s.truth.channel.prob(w, w), 1.0 - spec.channel_noise, 1e-12);
    EXPECT_EQ(row.size(), spec.bin_width);
  }
  s.conversation.for_each_bin([&](const Bin& b) {
    EXPECT_LE(b.size(), spec.bin_width);
    EXPECT_LE(b.posterior_sum(), 1.0 + kPosteriorSumSlack);
  });
}

TEST(SynthTest, BinsSurviveSerialization) {
  const SynthSample s = sample_conversation(small_spec());
  const Vocabulary vocab = synth_vocabulary(30);
  const std::string text = serialize_conversation(s.conversation, vocab);
  std::istringstream in(text);
  Vocabulary reread_vocab = vocab;
  EXPECT_EQ(parse_conversation(in, reread_vocab), s.conversation);
}

TEST(SynthTest, ObservedWordMarginalMatchesModel) {
  // Total variation between the empirical 1-best unigram and
  // sum_w q(w) p_c(v|w).
  SynthSpec spec = small_spec();
  spec.num_bins = 50000;
  const SynthSample s = sample_conversation(spec);
  const std::size_t V = spec.vocab_size;
  std::vector<double> expect(V, 0.0);
  for (WordId w = 0; w < V; ++w) {
    double q = 0.0;
    for (std::size_t t = 0; t < 3; ++t) {
      q += spec.lambda_true[t] * s.truth.topics.prob(t, w);
    }
    for (WordId v = 0; v < V; ++v) expect[v] += q * s.truth.channel.prob(v, w);
  }
  std::vector<double> seen(V, 0.0);
  s.conversation.for_each_bin([&](const Bin& b) {
    seen[b.one_best().word] += 1.0 / spec.num_bins;
  });
  double tv = 0.0;
  for (WordId v = 0; v < V; ++v) tv += std::abs(seen[v] - expect[v]);
  EXPECT_LE(tv / 2, 0.02);
}

TEST(SynthTest, WidthOneIsIdentity) {
  SynthSpec spec = small_spec();
  spec.bin_width = 1;
  const SynthSample s = sample_conversation(spec);
  s.conversation.for_each_bin([](const Bin& b) { EXPECT_EQ(b.size(), 1u); });
}

TEST(SynthTest, InvalidSpecsRejected) {
  SynthSpec spec = small_spec();
  spec.lambda_true = {0.5, 0.6, 0.2};
  EXPECT_THROW(validate_synth_spec(spec), ValidationError);
  spec = small_spec();
  spec.bin_width = 0;
  EXPECT_THROW(validate_synth_spec(spec), ValidationError);
  spec = small_spec();
  spec.channel_noise = 1.0;
  EXPECT_THROW(validate_synth_spec(spec), ValidationError);
  spec = small_spec();
  spec.topic_sharpness = 0.0;
  EXPECT_THROW(validate_synth_spec(spec), ValidationError);
}

TEST(SynthTest, TruthSidecarLayout) {
  const SynthSample s = sample_conversation(small_spec());
  std::ostringstream out;
  write_truth(out, s, synth_vocabulary(30));
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("TRUTH conv0\nLAMBDA 3\ntopic0 0.5\n", 0), 0u);
  EXPECT_NE(text.find("\nREFERENCE 500\n"), std::string::npos);
  EXPECT_NE(text.find("\nCHANNEL 30\n"), std::string::npos);
}

}  // namespace
}  // namespace cnadapt
