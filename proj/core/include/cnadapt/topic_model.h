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

#ifndef CNADAPT_TOPIC_MODEL_H_
#define CNADAPT_TOPIC_MODEL_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cnadapt/vocabulary.h"

namespace cnadapt {

// Probability floor applied to every smoothed topic distribution.
inline constexpr double kProbabilityFloor = 1e-10;
inline constexpr double kRowSumTolerance = 1e-9;

// T topic-conditional unigram distributions q(w|t) over a shared vocabulary
// of V words (ids 0..V-1). Rows are dense and strictly positive.
class TopicModel {
 public:
  TopicModel() = default;

  // `probs` is row-major T x V. Throws ValidationError unless every entry is
  // finite and positive and each row sums to 1 within kRowSumTolerance.
  // Rows are renormalized to absorb the tolerance.
  TopicModel(std::vector<std::string> labels, std::size_t vocab_size,
             std::vector<double> probs);

  std::size_t num_topics() const { return labels_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double prob(std::size_t topic, WordId w) const {
    return probs_[topic * vocab_size_ + w];
  }
  std::span<const double> row(std::size_t topic) const {
    return {probs_.data() + topic * vocab_size_, vocab_size_};
  }

 private:
  std::vector<std::string> labels_;
  std::size_t vocab_size_ = 0;
  std::vector<double> probs_;
};

// Raises entries below `floor` to exactly `floor`, scaling the remaining
// entries so the row still sums to 1.
void apply_probability_floor(std::span<double> row, double floor);

struct LabeledDocument {
  std::string label;
  std::vector<std::string> tokens;
};

// Witten-Bell smoothed unigram per topic label, over every word of `vocab`
// (tokens are interned first). With N tokens, W distinct seen words and U
// unseen vocabulary words: p(seen w) = c(w)/(N+W), each unseen word gets
// W/((N+W)U); if U = 0, p(w) = c(w)/N. Topics appear in order of first label
// occurrence. Throws TrainingError for a label with no tokens or an empty
// corpus.
TopicModel train_topic_model(const std::vector<LabeledDocument>& corpus,
                             Vocabulary& vocab);

// Conversation-level topic mixture. lambda is on the simplex and
// lambda = softmax(mu); topics with lambda = 0 carry mu = -inf.
struct MixtureWeights {
  std::vector<double> lambda;
  std::vector<double> mu;

  static MixtureWeights Uniform(std::size_t num_topics);
  static MixtureWeights FromMu(std::vector<double> mu);
  static MixtureWeights FromLambda(std::vector<double> lambda);
};

// Softmax with max subtraction.
std::vector<double> mu_to_lambda(std::span<const double> mu);

// q(w) = sum_t lambda_t q(w|t).
double mixture_prob(const TopicModel& tm, std::span<const double> lambda,
                    WordId w);

// Topic model file:
//   TOPICS <T> <V>
//   TOPIC <label>
//   <word> <prob>      (V lines, vocabulary order, 12 significant digits)
//   ...
// The reader interns words into `vocab`; the first block fixes the word
// order and later blocks must list the same words in the same order. The
// model's word ids must be 0..V-1, so the reader requires `vocab` to hold
// exactly those words (typically: start from an empty vocabulary).
void write_topic_model(std::ostream& out, const TopicModel& tm,
                       const Vocabulary& vocab);
TopicModel read_topic_model(std::istream& in, Vocabulary& vocab);

}  // namespace cnadapt

#endif  // CNADAPT_TOPIC_MODEL_H_
