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

#ifndef CNADAPT_CONFUSION_NETWORK_H_
#define CNADAPT_CONFUSION_NETWORK_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cnadapt/vocabulary.h"

namespace cnadapt {

struct Cell {
  WordId word = 0;
  double posterior = 0.0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// One slot of a confusion network: competing word hypotheses with their
// recognizer posteriors. Cells are kept in canonical order (descending
// posterior, ascending word id), so the first cell is the 1-best word.
class Bin {
 public:
  // Validates and sorts. Throws ValidationError on an empty cell list,
  // duplicate words, posteriors outside (0, 1], or a posterior sum above
  // 1 + 1e-6.
  static Bin FromCells(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  const Cell& one_best() const { return cells_.front(); }
  double posterior_sum() const;
  bool contains(WordId w) const;

  friend bool operator==(const Bin&, const Bin&) = default;

 private:
  explicit Bin(std::vector<Cell> cells) : cells_(std::move(cells)) {}
  std::vector<Cell> cells_;
};

inline constexpr double kPosteriorSumSlack = 1e-6;

struct ConfusionNetwork {
  std::string utterance_id;
  std::vector<Bin> bins;

  friend bool operator==(const ConfusionNetwork&,
                         const ConfusionNetwork&) = default;
};

// All confusion networks of one conversation.
class Conversation {
 public:
  Conversation() = default;
  // Throws ValidationError if any network has no bins.
  Conversation(std::string id, std::vector<ConfusionNetwork> networks);

  const std::string& id() const { return id_; }
  const std::vector<ConfusionNetwork>& networks() const { return networks_; }
  std::size_t total_bins() const { return total_bins_; }

  // Visits bins in file order.
  template <typename F>
  void for_each_bin(F&& f) const {
    for (const auto& net : networks_) {
      for (const auto& bin : net.bins) f(bin);
    }
  }

  friend bool operator==(const Conversation&, const Conversation&) = default;

 private:
  std::string id_;
  std::vector<ConfusionNetwork> networks_;
  std::size_t total_bins_ = 0;
};

// Bin pruning defaults: drop words under 5% of the bin maximum, keep at most
// ten words.
inline constexpr double kDefaultRelFloor = 0.05;
inline constexpr std::size_t kDefaultMaxWords = 10;

// Removes cells whose posterior is below rel_floor * max posterior, then keeps
// the max_words best cells. Posteriors are not renormalized.
Bin prune_bin(const Bin& bin, double rel_floor, std::size_t max_words);

Conversation prune_conversation(const Conversation& conv, double rel_floor,
                                std::size_t max_words);

using WordCounts = std::map<WordId, double>;

// tf(w) = sum over bins of s_i(w).
WordCounts expected_counts(const Conversation& conv);

// Number of bins whose 1-best word is w.
WordCounts one_best_counts(const Conversation& conv);

}  // namespace cnadapt

#endif  // CNADAPT_CONFUSION_NETWORK_H_
