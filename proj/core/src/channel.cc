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

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {

ChannelModel::ChannelModel(std::map<WordId, Row> rows) : rows_(std::move(rows)) {
  for (auto& [w, row] : rows_) {
    if (row.empty()) {
      throw ValidationError("channel row " + std::to_string(w) + " is empty");
    }
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0 && row[k].first == row[k - 1].first) {
        throw ValidationError("duplicate entry in channel row " +
                              std::to_string(w));
      }
      if (!std::isfinite(row[k].second) || row[k].second <= 0.0) {
        throw ValidationError("non-positive entry in channel row " +
                              std::to_string(w));
      }
      sum += row[k].second;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("channel row " + std::to_string(w) + " sums to " +
                            format_significant(sum, 17));
    }
    for (auto& entry : row) entry.second /= sum;
  }
}

const ChannelModel::Row* ChannelModel::row(WordId w) const {
  auto it = rows_.find(w);
  return it == rows_.end() ? nullptr : &it->second;
}

double ChannelModel::prob(WordId v, WordId w) const {
  const Row* r = row(w);
  if (r == nullptr) return v == w ? 1.0 : 0.0;
  auto it = std::lower_bound(
      r->begin(), r->end(), v,
      [](const std::pair<WordId, double>& e, WordId key) {
        return e.first < key;
      });
  return (it != r->end() && it->first == v) ? it->second : 0.0;
}

void accumulate_cooccurrences(const Conversation& conv, double rel_floor,
                              std::size_t max_words,
                              CooccurrenceCounts& counts) {
  conv.for_each_bin([&](const Bin& raw) {
    const Bin bin = prune_bin(raw, rel_floor, max_words);
    for (const Cell& w : bin.cells()) {
      for (const Cell& v : bin.cells()) ++counts[{w.word, v.word}];
    }
  });
}

ChannelModel normalize_cooccurrences(const CooccurrenceCounts& counts) {
  // Keys are (w, v), so each row is a contiguous run.
  std::map<WordId, ChannelModel::Row> rows;
  auto it = counts.begin();
  while (it != counts.end()) {
    const WordId w = it->first.first;
    std::uint64_t total = 0;
    auto end = it;
    for (; end != counts.end() && end->first.first == w; ++end) {
      total += end->second;
    }
    ChannelModel::Row row;
    for (; it != end; ++it) {
      row.emplace_back(it->first.second, static_cast<double>(it->second) /
                                             static_cast<double>(total));
    }
    rows.emplace(w, std::move(row));
  }
  return ChannelModel(std::move(rows));
}

ChannelModel estimate_channel(std::span<const Conversation> convs,
                              double rel_floor, std::size_t max_words) {
  if (convs.empty()) throw ValidationError("no conversations to count");
  CooccurrenceCounts counts;
  for (const auto& conv : convs) {
    accumulate_cooccurrences(conv, rel_floor, max_words, counts);
  }
  return normalize_cooccurrences(counts);
}

void write_channel(std::ostream& out, const ChannelModel& cm,
                   const Vocabulary& vocab) {
  struct Line {
    const std::string* w;
    const std::string* v;
    double p;
  };
  std::vector<Line> lines;
  for (const auto& [w, row] : cm.rows()) {
    for (const auto& [v, p] : row) {
      lines.push_back({&vocab.word(w), &vocab.word(v), p});
    }
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (*a.w != *b.w) return *a.w < *b.w;
    return *a.v < *b.v;
  });
  out << "CHANNEL " << cm.num_rows() << '\n';
  for (const Line& l : lines) {
    out << *l.w << ' ' << *l.v << ' '
        << format_significant(l.p, kProbabilityDigits) << '\n';
  }
}

ChannelModel read_channel(std::istream& in, Vocabulary& vocab) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared = 0;
  bool have_header = false;
  std::map<WordId, ChannelModel::Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a)) continue;
    if (!have_header) {
      if (a != "CHANNEL" || !(ls >> declared)) {
        throw ParseError("expected 'CHANNEL <rows>'", lineno);
      }
      have_header = true;
      continue;
    }
    std::string b;
    std::string prob_text;
    double p = 0.0;
    std::string extra;
    if (!(ls >> b >> prob_text) || (ls >> extra) ||
        !parse_double(prob_text, p)) {
      throw ParseError("expected '<w> <v> <prob>'", lineno);
    }
    rows[vocab.intern(a)].emplace_back(vocab.intern(b), p);
  }
  if (!have_header) throw ParseError("missing CHANNEL header", lineno);
  if (rows.size() != declared) {
    throw ValidationError("channel declares " + std::to_string(declared) +
                          " rows but lists " + std::to_string(rows.size()));
  }
  return ChannelModel(std::move(rows));
}

}  // namespace cnadapt
