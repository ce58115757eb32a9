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

#ifndef CNADAPT_EVAL_H_
#define CNADAPT_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cnadapt/vocabulary.h"

namespace cnadapt {

// Reference transcript tokens with their occurrence counts.
class ReferenceCorpus {
 public:
  ReferenceCorpus() = default;
  explicit ReferenceCorpus(std::vector<WordId> tokens);

  const std::vector<WordId>& tokens() const { return tokens_; }
  std::uint64_t count(WordId w) const;
  const std::map<WordId, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t max_count() const;
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<WordId> tokens_;
  std::map<WordId, std::uint64_t> counts_;
};

// Whitespace-tokenized transcript, one utterance per line. Tokens missing
// from `vocab` map to <unk> if the vocabulary has it; otherwise
// EvaluationError naming the token.
ReferenceCorpus read_reference(std::istream& in, const Vocabulary& vocab);

inline constexpr std::uint64_t kNoThreshold =
    std::numeric_limits<std::uint64_t>::max();

// 10^(-(1/|C|) sum_i log10 p(w_i)) over the tokens whose corpus count is at
// most `thr`; |C| counts only those tokens. Throws EvaluationError if no token
// qualifies or a counted token has zero (or missing) probability.
double constrained_perplexity(std::span<const double> model,
                              const ReferenceCorpus& corpus, std::uint64_t thr,
                              const Vocabulary* vocab = nullptr);

inline double perplexity(std::span<const double> model,
                         const ReferenceCorpus& corpus,
                         const Vocabulary* vocab = nullptr) {
  return constrained_perplexity(model, corpus, kNoThreshold, vocab);
}

// Unigram file: "UNIGRAM <V>" then V lines "<word> <prob>" in vocabulary
// order, 12 significant digits.
void write_unigram(std::ostream& out, std::span<const double> probs,
                   const Vocabulary& vocab);
// Interns words into `vocab`, which must start empty. Validates the sum.
std::vector<double> read_unigram(std::istream& in, Vocabulary& vocab);

}  // namespace cnadapt

#endif  // CNADAPT_EVAL_H_
