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

#ifndef CNADAPT_CHANNEL_H_
#define CNADAPT_CHANNEL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cnadapt/confusion_network.h"
#include "cnadapt/vocabulary.h"

namespace cnadapt {

// Sparse ASR confusion distribution p_c(v|w): probability that the
// recognizer's 1-best word is v when w was spoken. Rows are keyed by the true
// word w. Words without a row are treated as always recognized correctly.
class ChannelModel {
 public:
  using Row = std::vector<std::pair<WordId, double>>;  // sorted by v

  ChannelModel() = default;

  // Throws ValidationError unless every row is non-empty, has positive
  // entries with no duplicate v, and sums to 1 within 1e-9. Rows are sorted
  // and renormalized.
  explicit ChannelModel(std::map<WordId, Row> rows);

  // Stored p_c(v|w); for words without a row: 1 if v == w else 0.
  double prob(WordId v, WordId w) const;

  bool has_row(WordId w) const { return rows_.count(w) != 0; }
  const Row* row(WordId w) const;
  const std::map<WordId, Row>& rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;

 private:
  std::map<WordId, Row> rows_;
};

// Co-occurrence counts c(v,w): number of (pruned) bins holding both words,
// a word co-occurring with itself once per bin.
using CooccurrenceCounts = std::map<std::pair<WordId, WordId>, std::uint64_t>;

// Adds the counts of one conversation's bins, pruned with the given
// parameters, to `counts`.
void accumulate_cooccurrences(const Conversation& conv, double rel_floor,
                              std::size_t max_words,
                              CooccurrenceCounts& counts);

ChannelModel normalize_cooccurrences(const CooccurrenceCounts& counts);

// Prune -> count -> normalize. Counting ignores posteriors. Throws
// ValidationError when `convs` is empty.
ChannelModel estimate_channel(std::span<const Conversation> convs,
                              double rel_floor = kDefaultRelFloor,
                              std::size_t max_words = kDefaultMaxWords);

inline double channel_prob(const ChannelModel& cm, WordId v, WordId w) {
  return cm.prob(v, w);
}

// Channel file:
//   CHANNEL <rows>
//   <w> <v> <prob>     sorted by (w, v) as strings, 12 significant digits
void write_channel(std::ostream& out, const ChannelModel& cm,
                   const Vocabulary& vocab);
ChannelModel read_channel(std::istream& in, Vocabulary& vocab);

}  // namespace cnadapt

#endif  // CNADAPT_CHANNEL_H_
