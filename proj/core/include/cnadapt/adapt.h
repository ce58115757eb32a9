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

#ifndef CNADAPT_ADAPT_H_
#define CNADAPT_ADAPT_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnadapt/channel.h"
#include "cnadapt/confusion_network.h"
#include "cnadapt/topic_model.h"

namespace cnadapt {

// Which observations drive the estimate and whether the ASR channel is
// modeled:
//   kSelfOneBest  self-training on 1-best words
//   kSelfTf       self-training on expected counts tf(w)
//   kConfOneBest  channel-aware, 1-best observations
//   kConfTf       channel-aware, every bin word weighted by its posterior
enum class Variant { kSelfOneBest, kSelfTf, kConfOneBest, kConfTf };

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
bool uses_channel(Variant v);

inline constexpr double kDefaultRelTol = 1e-6;
inline constexpr int kDefaultMaxIters = 200;

struct EstimatorConfig {
  Variant variant = Variant::kSelfOneBest;
  // beta * (alpha - 1) of a symmetric Dirichlet prior on lambda; 0 is MLE.
  double map_strength = 0.0;
  int max_iters = kDefaultMaxIters;
  double rel_tol = kDefaultRelTol;
  // Starting point; empty means uniform.
  std::vector<double> initial_lambda;
};

struct FitResult {
  MixtureWeights weights;
  // Objective at the starting point followed by one value per iteration.
  // For MAP runs the objective includes map_strength * sum_t ln lambda_t.
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
};

// r(t|w) = lambda_t q(w|t) / sum_t' lambda_t' q(w|t').
std::vector<double> topic_posterior(const TopicModel& tm,
                                    std::span<const double> lambda, WordId w);

// sum_i ln q(1-best_i), natural log.
double loglik_self_1best(const Conversation& conv, const TopicModel& tm,
                         std::span<const double> lambda);
// sum_w tf(w) ln q(w).
double loglik_self_tf(const Conversation& conv, const TopicModel& tm,
                      std::span<const double> lambda);

// map_strength * sum_t ln lambda_t. A zero weight gives -inf when
// map_strength > 0; when map_strength < 0 clamped topics have left the
// model and are skipped.
double map_penalty(std::span<const double> lambda, double map_strength);

FitResult fit_self_1best(const Conversation& conv, const TopicModel& tm,
                         const EstimatorConfig& cfg);
FitResult fit_self_tf(const Conversation& conv, const TopicModel& tm,
                      const EstimatorConfig& cfg);

// Posterior that each bin word is the spoken word given that `observed` was
// recognized: r(w) proportional to q(w) p_c(observed|w) over the bin. Falls
// back to a point mass on `observed` when every term is zero. Returned in
// bin cell order.
std::vector<std::pair<WordId, double>> reference_posterior(
    const Bin& bin, const TopicModel& tm, std::span<const double> lambda,
    const ChannelModel& cm, WordId observed);

// Bin-conditioned likelihood of the observations:
//   1-best: sum_i ln p_i(1-best_i)
//   tf:     sum_i sum_{v in b_i} s_i(v) ln p_i(v)
// with p_i(v) = sum_{w in b_i} q(w) p_c(v|w) / sum_{w in b_i} q(w).
double loglik_conf(const Conversation& conv, const TopicModel& tm,
                   std::span<const double> lambda, const ChannelModel& cm,
                   bool use_tf);

// Channel-aware EM over softmax parameters. Delegates to fit_conf_map when
// cfg.map_strength != 0.
FitResult fit_conf(const Conversation& conv, const TopicModel& tm,
                   const ChannelModel& cm, const EstimatorConfig& cfg);
// Requires cfg.map_strength != 0. Negative strength (alpha < 1) uses the
// Jensen bound on the prior term, positive strength the log(x) <= x - 1 bound.
FitResult fit_conf_map(const Conversation& conv, const TopicModel& tm,
                       const ChannelModel& cm, const EstimatorConfig& cfg);

// Dispatches on cfg.variant. `cm` must be non-null for channel variants.
FitResult fit(const Conversation& conv, const TopicModel& tm,
              const ChannelModel* cm, const EstimatorConfig& cfg);

// Objective that fit() maximizes for cfg.variant/map_strength at lambda.
double variant_objective(const Conversation& conv, const TopicModel& tm,
                         const ChannelModel* cm, Variant variant,
                         double map_strength, std::span<const double> lambda);

// Dense q(.) = sum_t lambda_t q(.|t).
std::vector<double> adapted_unigram(const TopicModel& tm,
                                    std::span<const double> lambda);

// LAMBDA <conversation-id> <T>, then T lines "<topic-label> <weight>".
void write_lambda(std::ostream& out, const std::string& conversation_id,
                  const TopicModel& tm, std::span<const double> lambda);

}  // namespace cnadapt

#endif  // CNADAPT_ADAPT_H_
