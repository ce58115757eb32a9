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

#include "cnadapt/confusion_problem.h"

#include <cmath>
#include <limits>
#include <string>

#include "cnadapt/errors.h"

namespace cnadapt {

ConfusionProblem::ConfusionProblem(const Conversation& conv,
                                   const TopicModel& tm,
                                   const ChannelModel& cm, bool use_tf)
    : num_topics_(tm.num_topics()), use_tf_(use_tf) {
  const std::size_t T = num_topics_;
  bins_.reserve(conv.total_bins());
  conv.for_each_bin([&](const Bin& bin) {
    BinData d;
    const std::size_t n = bin.size();
    d.words.reserve(n);
    d.weight.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const Cell& c = bin.cells()[k];
      if (c.word >= tm.vocab_size()) {
        throw ValidationError("word id " + std::to_string(c.word) +
                              " is outside the topic model vocabulary");
      }
      d.words.push_back(c.word);
      if (use_tf) d.weight[k] = c.posterior;
    }
    if (!use_tf) d.weight[0] = 1.0;  // cells are sorted; 0 is the 1-best
    for (double x : d.weight) d.total_weight += x;

    d.channel.assign(n * n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      if (d.weight[v] == 0.0) continue;
      double row_mass = 0.0;
      for (std::size_t w = 0; w < n; ++w) {
        d.channel[v * n + w] = cm.prob(d.words[v], d.words[w]);
        row_mass += d.channel[v * n + w];
      }
      // No bin word can produce the observation: treat it as correctly
      // recognized.
      if (row_mass == 0.0) d.channel[v * n + v] = 1.0;
    }

    d.topic_word.resize(T * n);
    d.mass.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t w = 0; w < n; ++w) {
        const double p = tm.prob(t, d.words[w]);
        d.topic_word[t * n + w] = p;
        d.mass[t] += p;
      }
    }
    bins_.push_back(std::move(d));
  });
}

void ConfusionProblem::word_probs(const BinData& bin,
                                  std::span<const double> lambda,
                                  std::vector<double>& q, double& z) const {
  const std::size_t n = bin.words.size();
  q.assign(n, 0.0);
  for (std::size_t t = 0; t < num_topics_; ++t) {
    if (lambda[t] == 0.0) continue;
    for (std::size_t w = 0; w < n; ++w) {
      q[w] += lambda[t] * bin.topic_word[t * n + w];
    }
  }
  z = 0.0;
  for (double x : q) z += x;
}

double ConfusionProblem::loglik(std::span<const double> lambda) const {
  double total = 0.0;
  std::vector<double> q;
  double z = 0.0;
  for (const BinData& bin : bins_) {
    word_probs(bin, lambda, q, z);
    const std::size_t n = bin.words.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (bin.weight[v] == 0.0) continue;
      double p = 0.0;
      for (std::size_t w = 0; w < n; ++w) p += q[w] * bin.channel[v * n + w];
      total += bin.weight[v] * std::log(p / z);
    }
  }
  return total;
}

ConfusionProblem::Statistics ConfusionProblem::statistics(
    std::span<const double> lambda) const {
  const std::size_t T = num_topics_;
  Statistics s{std::vector<double>(T, 0.0), std::vector<double>(T, 0.0)};
  std::vector<double> q;
  std::vector<double> rho;
  double z = 0.0;
  for (const BinData& bin : bins_) {
    word_probs(bin, lambda, q, z);
    const std::size_t n = bin.words.size();
    // rho[w] = sum_v weight(v) r(w|v): expected count of w as the spoken word.
    rho.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      if (bin.weight[v] == 0.0) continue;
      double p = 0.0;
      for (std::size_t w = 0; w < n; ++w) p += q[w] * bin.channel[v * n + w];
      for (std::size_t w = 0; w < n; ++w) {
        rho[w] += bin.weight[v] * q[w] * bin.channel[v * n + w] / p;
      }
    }
    for (std::size_t t = 0; t < T; ++t) {
      s.d[t] += bin.total_weight * bin.mass[t] / z;
      if (lambda[t] == 0.0) continue;
      double at = 0.0;
      for (std::size_t w = 0; w < n; ++w) {
        if (rho[w] == 0.0) continue;
        at += rho[w] * lambda[t] * bin.topic_word[t * n + w] / q[w];
      }
      s.a[t] += at;
    }
  }
  return s;
}

std::vector<double> ConfusionProblem::next_mu(std::span<const double> mu,
                                              double map_strength) const {
  const std::size_t T = num_topics_;
  const auto lambda = mu_to_lambda(mu);
  const Statistics s = statistics(lambda);
  const double m = map_strength;
  const double tf = static_cast<double>(T);

  // Work with sum_t exp(mu_t) = 1, so exp(mu_t) = lambda_t.
  std::vector<double> next(T, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    double num = 0.0;
    double den = 0.0;
    if (m < 0.0) {
      num = s.a[t] + m * (1.0 - tf * lambda[t]);
      den = s.d[t];
    } else {
      num = s.a[t] + m;
      den = s.d[t] + m * tf;
    }
    if (!std::isfinite(num) || !std::isfinite(den)) {
      throw EstimationError("non-finite update term for topic " +
                            std::to_string(t));
    }
    if (lambda[t] == 0.0 && m <= 0.0) continue;
    if (den <= 0.0) {
      throw EstimationError(
          "non-positive update denominator for topic " + std::to_string(t) +
          "; try a smaller map_strength than " + std::to_string(m));
    }
    if (num > 0.0) {
      next[t] = num / den;
      total += next[t];
    }
  }
  if (!(total > 0.0)) {
    throw EstimationError("all topics clamped to zero with map_strength " +
                          std::to_string(m));
  }
  std::vector<double> out(T);
  for (std::size_t t = 0; t < T; ++t) {
    out[t] = next[t] > 0.0 ? std::log(next[t] / total)
                           : -std::numeric_limits<double>::infinity();
  }
  return out;
}

double ConfusionProblem::lower_bound(std::span<const double> mu,
                                     std::span<const double> delta,
                                     double map_strength) const {
  const std::size_t T = num_topics_;
  const auto lambda = mu_to_lambda(mu);
  std::vector<double> q;
  double z = 0.0;
  double g = 0.0;
  for (const BinData& bin : bins_) {
    word_probs(bin, lambda, q, z);
    const std::size_t n = bin.words.size();
    // sum_t exp(mu_t + delta_t) B_t / sum_t exp(mu_t) B_t
    double growth = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      growth += lambda[t] * std::exp(delta[t]) * bin.mass[t];
    }
    growth /= z;
    for (std::size_t v = 0; v < n; ++v) {
      if (bin.weight[v] == 0.0) continue;
      double p = 0.0;
      for (std::size_t w = 0; w < n; ++w) p += q[w] * bin.channel[v * n + w];
      for (std::size_t w = 0; w < n; ++w) {
        const double r = q[w] * bin.channel[v * n + w] / p;
        if (r == 0.0) continue;
        // Jensen term: sum_t pi(t|w) delta_t
        double jensen = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          jensen += lambda[t] * bin.topic_word[t * n + w] * delta[t];
        }
        jensen /= q[w];
        g += bin.weight[v] * r * (1.0 + jensen - growth);
      }
    }
  }

  const double m = map_strength;
  if (m != 0.0) {
    const double tf = static_cast<double>(T);
    double sum_delta = 0.0;
    double mean_delta = 0.0;
    double mean_growth = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      sum_delta += delta[t];
      mean_delta += lambda[t] * delta[t];
      mean_growth += lambda[t] * std::exp(delta[t]);
    }
    if (m < 0.0) {
      g += m * (sum_delta - tf * mean_delta);
    } else {
      g += m * (sum_delta - tf * (mean_growth - 1.0));
    }
  }
  return g;
}

}  // namespace cnadapt
