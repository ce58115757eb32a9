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

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cnadapt/errors.h"

namespace cnadapt {
namespace {

bool canonical_less(const Cell& a, const Cell& b) {
  if (a.posterior != b.posterior) return a.posterior > b.posterior;
  return a.word < b.word;
}

}  // namespace

Bin Bin::FromCells(std::vector<Cell> cells) {
  if (cells.empty()) throw ValidationError("empty bin");
  double sum = 0.0;
  for (const Cell& c : cells) {
    if (!(c.posterior > 0.0 && c.posterior <= 1.0)) {
      throw ValidationError("posterior " + std::to_string(c.posterior) +
                            " outside (0, 1]");
    }
    sum += c.posterior;
  }
  if (sum > 1.0 + kPosteriorSumSlack) {
    throw ValidationError("bin posteriors sum to " + std::to_string(sum));
  }
  std::sort(cells.begin(), cells.end(), canonical_less);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cells[i].word == cells[j].word) {
        throw ValidationError("duplicate word id " +
                              std::to_string(cells[i].word) + " in bin");
      }
    }
  }
  return Bin(std::move(cells));
}

double Bin::posterior_sum() const {
  double sum = 0.0;
  for (const Cell& c : cells_) sum += c.posterior;
  return sum;
}

bool Bin::contains(WordId w) const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [w](const Cell& c) { return c.word == w; });
}

Conversation::Conversation(std::string id,
                           std::vector<ConfusionNetwork> networks)
    : id_(std::move(id)), networks_(std::move(networks)) {
  for (const auto& net : networks_) {
    if (net.bins.empty()) {
      throw ValidationError("utterance '" + net.utterance_id +
                            "' has no bins");
    }
    total_bins_ += net.bins.size();
  }
}

Bin prune_bin(const Bin& bin, double rel_floor, std::size_t max_words) {
  if (!(rel_floor >= 0.0 && rel_floor <= 1.0)) {
    throw std::invalid_argument("rel_floor must lie in [0, 1]");
  }
  if (max_words < 1) throw std::invalid_argument("max_words must be >= 1");

  const auto& cells = bin.cells();
  const double floor = rel_floor * cells.front().posterior;
  std::vector<Cell> kept;
  kept.reserve(std::min(cells.size(), max_words));
  // Cells are sorted, so survivors of the floor form a prefix.
  for (const Cell& c : cells) {
    if (c.posterior < floor || kept.size() == max_words) break;
    kept.push_back(c);
  }
  return Bin::FromCells(std::move(kept));
}

Conversation prune_conversation(const Conversation& conv, double rel_floor,
                                std::size_t max_words) {
  std::vector<ConfusionNetwork> nets;
  nets.reserve(conv.networks().size());
  for (const auto& net : conv.networks()) {
    ConfusionNetwork pruned{net.utterance_id, {}};
    pruned.bins.reserve(net.bins.size());
    for (const Bin& b : net.bins) {
      pruned.bins.push_back(prune_bin(b, rel_floor, max_words));
    }
    nets.push_back(std::move(pruned));
  }
  return Conversation(conv.id(), std::move(nets));
}

WordCounts expected_counts(const Conversation& conv) {
  WordCounts tf;
  conv.for_each_bin([&](const Bin& b) {
    for (const Cell& c : b.cells()) tf[c.word] += c.posterior;
  });
  return tf;
}

WordCounts one_best_counts(const Conversation& conv) {
  WordCounts counts;
  conv.for_each_bin([&](const Bin& b) { counts[b.one_best().word] += 1.0; });
  return counts;
}

}  // namespace cnadapt
