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

#ifndef CNADAPT_CONFUSION_PROBLEM_H_
#define CNADAPT_CONFUSION_PROBLEM_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cnadapt/channel.h"
#include "cnadapt/confusion_network.h"
#include "cnadapt/topic_model.h"

namespace cnadapt {

// Precomputed per-bin data for channel-aware estimation of one conversation,
// with the minorize-maximize machinery behind fit_conf / fit_conf_map.
//
// Notation in comments: B_{i,t} = sum_{w in b_i} q(w|t), Z_i = sum_t lambda_t
// B_{i,t}, S_i the total observation weight of bin i (1 for 1-best, the bin's
// posterior sum for tf).
class ConfusionProblem {
 public:
  ConfusionProblem(const Conversation& conv, const TopicModel& tm,
                   const ChannelModel& cm, bool use_tf);

  std::size_t num_topics() const { return num_topics_; }
  std::size_t num_bins() const { return bins_.size(); }
  bool use_tf() const { return use_tf_; }

  double loglik(std::span<const double> lambda) const;

  // Sufficient statistics of one E-step at lambda:
  //   a_t = sum_i sum_v weight(i,v) sum_w r_i(w|v) lambda_t q(w|t) / q(w)
  //   d_t = sum_i S_i B_{i,t} / Z_i
  struct Statistics {
    std::vector<double> a;
    std::vector<double> d;
  };
  Statistics statistics(std::span<const double> lambda) const;

  // One update from mu. Returns the new mu, normalized so that
  // sum_t exp(mu_t) = 1; topics driven to zero get -inf. Throws
  // EstimationError if every topic is clamped or a term is non-finite.
  std::vector<double> next_mu(std::span<const double> mu,
                              double map_strength) const;

  // Lower bound on Q(mu + delta) - Q(mu) (plus the prior difference bound
  // when map_strength != 0) whose maximizer next_mu() returns. mu must be
  // finite.
  double lower_bound(std::span<const double> mu, std::span<const double> delta,
                     double map_strength = 0.0) const;

 private:
  struct BinData {
    std::vector<WordId> words;
    // Observation weights: s_i(v) for tf, indicator of the 1-best otherwise.
    std::vector<double> weight;
    double total_weight = 0.0;
    // channel[v * n + w] = p_c(words[v] | words[w]), with rows that are zero
    // over the whole bin replaced by the identity.
    std::vector<double> channel;
    // topic_word[t * n + w] = q(words[w] | t)
    std::vector<double> topic_word;
    std::vector<double> mass;  // B_{i,t}
  };

  // q(w) for each bin word and the bin normalizer Z_i.
  void word_probs(const BinData& bin, std::span<const double> lambda,
                  std::vector<double>& q, double& z) const;

  std::size_t num_topics_ = 0;
  bool use_tf_ = false;
  std::vector<BinData> bins_;
};

}  // namespace cnadapt

#endif  // CNADAPT_CONFUSION_PROBLEM_H_
