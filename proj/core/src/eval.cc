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

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {

ReferenceCorpus::ReferenceCorpus(std::vector<WordId> tokens)
    : tokens_(std::move(tokens)) {
  for (WordId w : tokens_) ++counts_[w];
}

std::uint64_t ReferenceCorpus::count(WordId w) const {
  auto it = counts_.find(w);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t ReferenceCorpus::max_count() const {
  std::uint64_t mx = 0;
  for (const auto& [w, c] : counts_) mx = std::max(mx, c);
  return mx;
}

ReferenceCorpus read_reference(std::istream& in, const Vocabulary& vocab) {
  const auto unk = vocab.find(kUnknownWord);
  std::vector<WordId> tokens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (auto id = vocab.find(tok)) {
        tokens.push_back(*id);
      } else if (unk) {
        tokens.push_back(*unk);
      } else {
        throw EvaluationError("line " + std::to_string(lineno) +
                              ": out-of-vocabulary token '" + tok +
                              "' and the model has no " +
                              std::string(kUnknownWord));
      }
    }
  }
  return ReferenceCorpus(std::move(tokens));
}

double constrained_perplexity(std::span<const double> model,
                              const ReferenceCorpus& corpus, std::uint64_t thr,
                              const Vocabulary* vocab) {
  if (thr < 1) throw std::invalid_argument("threshold must be >= 1");
  double log_sum = 0.0;
  std::size_t n = 0;
  for (WordId w : corpus.tokens()) {
    if (corpus.count(w) > thr) continue;
    const double p = w < model.size() ? model[w] : 0.0;
    if (!(p > 0.0)) {
      const std::string name = vocab != nullptr && w < vocab->size()
                                    ? vocab->word(w)
                                    : "#" + std::to_string(w);
      throw EvaluationError("token '" + name + "' has zero probability");
    }
    log_sum += std::log10(p);
    ++n;
  }
  if (n == 0) {
    throw EvaluationError("no reference token has count <= " +
                          std::to_string(thr));
  }
  return std::pow(10.0, -log_sum / static_cast<double>(n));
}

void write_unigram(std::ostream& out, std::span<const double> probs,
                   const Vocabulary& vocab) {
  out << "UNIGRAM " << probs.size() << '\n';
  for (std::size_t w = 0; w < probs.size(); ++w) {
    out << vocab.word(static_cast<WordId>(w)) << ' '
        << format_significant(probs[w], kProbabilityDigits) << '\n';
  }
}

std::vector<double> read_unigram(std::istream& in, Vocabulary& vocab) {
  if (!vocab.empty()) {
    throw std::invalid_argument("read_unigram needs an empty vocabulary");
  }
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared = 0;
  bool have_header = false;
  std::vector<double> probs;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a)) continue;
    if (!have_header) {
      if (a != "UNIGRAM" || !(ls >> declared) || declared == 0) {
        throw ParseError("expected 'UNIGRAM <V>'", lineno);
      }
      have_header = true;
      continue;
    }
    std::string prob_text;
    double p = 0.0;
    if (!(ls >> prob_text) || !parse_double(prob_text, p) || p < 0.0) {
      throw ParseError("expected '<word> <prob>'", lineno);
    }
    if (vocab.intern(a) != probs.size()) {
      throw ValidationError("line " + std::to_string(lineno) +
                            ": duplicate word '" + a + "'");
    }
    probs.push_back(p);
  }
  if (!have_header) throw ParseError("missing UNIGRAM header", lineno);
  if (probs.size() != declared) {
    throw ValidationError("unigram declares " + std::to_string(declared) +
                          " words but lists " + std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (double p : probs) sum += p;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("unigram sums to " + format_significant(sum, 17));
  }
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace cnadapt
