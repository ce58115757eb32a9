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

#include "cnadapt/topic_model.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {

TopicModel::TopicModel(std::vector<std::string> labels,
                       std::size_t vocab_size, std::vector<double> probs)
    : labels_(std::move(labels)),
      vocab_size_(vocab_size),
      probs_(std::move(probs)) {
  if (labels_.empty()) throw ValidationError("topic model has no topics");
  if (vocab_size_ == 0) throw ValidationError("topic model has no words");
  if (probs_.size() != labels_.size() * vocab_size_) {
    throw ValidationError("topic model has " + std::to_string(probs_.size()) +
                          " probabilities, expected T*V = " +
                          std::to_string(labels_.size() * vocab_size_));
  }
  for (std::size_t t = 0; t < labels_.size(); ++t) {
    double sum = 0.0;
    for (double p : row(t)) {
      if (!std::isfinite(p) || p <= 0.0) {
        throw ValidationError("topic '" + labels_[t] +
                              "' has a non-positive probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError("topic '" + labels_[t] + "' sums to " +
                            format_significant(sum, 17));
    }
  }
}

void apply_probability_floor(std::span<double> row, double floor) {
  // Scaling the unfloored entries down can push new entries under the
  // floor; repeat until the floored set is stable.
  std::vector<bool> floored(row.size(), false);
  for (;;) {
    std::size_t k = 0;
    double rest = 0.0;
    bool changed = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!floored[i] && row[i] < floor) {
        floored[i] = true;
        changed = true;
      }
      if (floored[i]) {
        ++k;
      } else {
        rest += row[i];
      }
    }
    if (!changed) return;
    const double budget = 1.0 - static_cast<double>(k) * floor;
    if (rest <= 0.0 || budget <= 0.0) {
      throw ValidationError("probability floor exceeds the row mass");
    }
    const double scale = budget / rest;
    for (std::size_t i = 0; i < row.size(); ++i) {
      row[i] = floored[i] ? floor : row[i] * scale;
    }
  }
}

TopicModel train_topic_model(const std::vector<LabeledDocument>& corpus,
                             Vocabulary& vocab) {
  if (corpus.empty()) throw TrainingError("empty training corpus");

  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> topic_of;
  std::vector<std::vector<WordId>> tokens_of;
  for (const auto& doc : corpus) {
    auto [it, inserted] = topic_of.emplace(doc.label, labels.size());
    if (inserted) {
      labels.push_back(doc.label);
      tokens_of.emplace_back();
    }
    auto& ids = tokens_of[it->second];
    for (const auto& tok : doc.tokens) ids.push_back(vocab.intern(tok));
  }

  const std::size_t vsize = vocab.size();
  std::vector<double> probs(labels.size() * vsize, 0.0);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (tokens_of[t].empty()) {
      throw TrainingError("topic '" + labels[t] + "' has no tokens");
    }
    std::vector<std::uint64_t> counts(vsize, 0);
    for (WordId w : tokens_of[t]) ++counts[w];

    const auto n = static_cast<double>(tokens_of[t].size());
    const auto seen = static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(),
                      [](std::uint64_t c) { return c > 0; }));
    const std::size_t unseen = vsize - seen;
    std::span<double> row(probs.data() + t * vsize, vsize);
    if (unseen == 0) {
      for (std::size_t w = 0; w < vsize; ++w) {
        row[w] = static_cast<double>(counts[w]) / n;
      }
    } else {
      const double denom = n + static_cast<double>(seen);
      const double unseen_p =
          static_cast<double>(seen) / (denom * static_cast<double>(unseen));
      for (std::size_t w = 0; w < vsize; ++w) {
        row[w] = counts[w] > 0 ? static_cast<double>(counts[w]) / denom
                               : unseen_p;
      }
    }
    apply_probability_floor(row, kProbabilityFloor);
  }
  return TopicModel(std::move(labels), vsize, std::move(probs));
}

std::vector<double> mu_to_lambda(std::span<const double> mu) {
  if (mu.empty()) throw std::invalid_argument("empty mu");
  const double mx = *std::max_element(mu.begin(), mu.end());
  if (!std::isfinite(mx)) {
    throw std::invalid_argument("mu has no finite maximum");
  }
  std::vector<double> lambda(mu.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < mu.size(); ++t) {
    lambda[t] = std::exp(mu[t] - mx);
    sum += lambda[t];
  }
  for (double& l : lambda) l /= sum;
  return lambda;
}

MixtureWeights MixtureWeights::Uniform(std::size_t num_topics) {
  return {std::vector<double>(num_topics, 1.0 / static_cast<double>(num_topics)),
          std::vector<double>(num_topics, 0.0)};
}

MixtureWeights MixtureWeights::FromMu(std::vector<double> mu) {
  auto lambda = mu_to_lambda(mu);
  return {std::move(lambda), std::move(mu)};
}

MixtureWeights MixtureWeights::FromLambda(std::vector<double> lambda) {
  std::vector<double> mu(lambda.size());
  for (std::size_t t = 0; t < lambda.size(); ++t) {
    mu[t] = lambda[t] > 0.0 ? std::log(lambda[t])
                            : -std::numeric_limits<double>::infinity();
  }
  return {std::move(lambda), std::move(mu)};
}

double mixture_prob(const TopicModel& tm, std::span<const double> lambda,
                    WordId w) {
  double q = 0.0;
  for (std::size_t t = 0; t < tm.num_topics(); ++t) {
    q += lambda[t] * tm.prob(t, w);
  }
  return q;
}

void write_topic_model(std::ostream& out, const TopicModel& tm,
                       const Vocabulary& vocab) {
  if (vocab.size() < tm.vocab_size()) {
    throw std::invalid_argument("vocabulary smaller than the topic model");
  }
  out << "TOPICS " << tm.num_topics() << ' ' << tm.vocab_size() << '\n';
  for (std::size_t t = 0; t < tm.num_topics(); ++t) {
    out << "TOPIC " << tm.labels()[t] << '\n';
    for (std::size_t w = 0; w < tm.vocab_size(); ++w) {
      out << vocab.word(static_cast<WordId>(w)) << ' '
          << format_significant(tm.prob(t, static_cast<WordId>(w)),
                                kProbabilityDigits)
          << '\n';
    }
  }
}

TopicModel read_topic_model(std::istream& in, Vocabulary& vocab) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        return std::istringstream(line);
      }
    }
    throw ParseError("unexpected end of topic model", lineno);
  };

  std::size_t num_topics = 0;
  std::size_t vsize = 0;
  {
    auto ls = next_line();
    std::string tag;
    if (!(ls >> tag >> num_topics >> vsize) || tag != "TOPICS" ||
        num_topics == 0 || vsize == 0) {
      throw ParseError("expected 'TOPICS <T> <V>'", lineno);
    }
  }
  std::vector<std::string> labels;
  std::vector<double> probs(num_topics * vsize);
  for (std::size_t t = 0; t < num_topics; ++t) {
    auto ls = next_line();
    std::string tag;
    std::string label;
    if (!(ls >> tag >> label) || tag != "TOPIC") {
      throw ParseError("expected 'TOPIC <label>'", lineno);
    }
    labels.push_back(label);
    double sum = 0.0;
    for (std::size_t w = 0; w < vsize; ++w) {
      auto ws = next_line();
      std::string word;
      std::string prob_text;
      double p = 0.0;
      if (!(ws >> word >> prob_text) || !parse_double(prob_text, p)) {
        throw ParseError("expected '<word> <prob>'", lineno);
      }
      if (t == 0) {
        const auto existing = vocab.find(word);
        const WordId id = existing ? *existing : vocab.intern(word);
        if (id != w) {
          throw ValidationError("line " + std::to_string(lineno) + ": word '" +
                                word + "' conflicts with vocabulary order");
        }
      } else if (vocab.word(static_cast<WordId>(w)) != word) {
        throw ValidationError("line " + std::to_string(lineno) +
                              ": topic blocks list words in different order");
      }
      probs[t * vsize + w] = p;
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError("topic '" + label + "' sums to " +
                            format_significant(sum, 17));
    }
    for (std::size_t w = 0; w < vsize; ++w) probs[t * vsize + w] /= sum;
  }
  return TopicModel(std::move(labels), vsize, std::move(probs));
}

}  // namespace cnadapt
