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

#ifndef CNADAPT_SYNTH_H_
#define CNADAPT_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cnadapt/channel.h"
#include "cnadapt/confusion_network.h"
#include "cnadapt/topic_model.h"
#include "cnadapt/vocabulary.h"

namespace cnadapt {

// Parameters of the word-level generative story: topic t ~ lambda, spoken
// word w ~ q(.|t), recognized word ~ p_c(.|w).
struct SynthSpec {
  std::size_t num_topics = 3;
  std::size_t vocab_size = 50;
  std::vector<double> lambda_true;  // empty: uniform
  double topic_sharpness = 0.1;     // symmetric Dirichlet concentration
  double channel_noise = 0.4;       // 1 - p_c(w|w)
  std::size_t num_bins = 5000;
  std::size_t bin_width = 5;
  std::size_t bins_per_network = 25;
  std::size_t num_conversations = 1;
  std::uint64_t seed = 1;
};

// Throws ValidationError on an invalid spec.
void validate_synth_spec(const SynthSpec& spec);

// Words "w0".."w<V-1>" with ids 0..V-1.
Vocabulary synth_vocabulary(std::size_t vocab_size);

struct SynthTruth {
  std::vector<double> lambda;
  TopicModel topics;
  ChannelModel channel;
  std::vector<WordId> references;  // spoken word per bin, in bin order
  std::vector<std::size_t> topic_per_bin;
};

struct SynthSample {
  Conversation conversation;
  SynthTruth truth;
};

// Samples conversation `index` of the spec with seed (spec.seed ^ index).
// Topics and channel are drawn from the same derived stream, so every
// conversation index has its own model. Deterministic given (spec, index).
//
// Bins hold the recognized word plus every word that can be confused into
// it, cut to bin_width by true posterior q(w) p_c(recognized|w); the
// recognized word always survives and leads the bin. Posteriors are that
// true posterior, quantized to the CNET grid.
SynthSample sample_conversation(const SynthSpec& spec, std::size_t index = 0);

// Truth sidecar:
//   TRUTH <conversation-id>
//   LAMBDA <T>
//   <topic-label> <weight>        (T lines)
//   REFERENCE <M>
//   <word>                        (M lines, bin order)
//   CHANNEL <rows>
//   <w> <v> <prob>                (channel file body)
void write_truth(std::ostream& out, const SynthSample& sample,
                 const Vocabulary& vocab);

}  // namespace cnadapt

#endif  // CNADAPT_SYNTH_H_
