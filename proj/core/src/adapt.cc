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

#include "cnadapt/adapt.h"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cnadapt/confusion_problem.h"
#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {
namespace {

// Weighted word observations for self-training: 1-best counts or tf(w).
class SelfProblem {
 public:
  SelfProblem(const WordCounts& counts, const TopicModel& tm) : tm_(tm) {
    words_.reserve(counts.size());
    for (const auto& [w, c] : counts) {
      if (w >= tm.vocab_size()) {
        throw ValidationError("word id " + std::to_string(w) +
                              " is outside the topic model vocabulary");
      }
      words_.push_back(w);
      weights_.push_back(c);
    }
  }

  double loglik(std::span<const double> lambda) const {
    double total = 0.0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      total += weights_[k] * std::log(mixture_prob(tm_, lambda, words_[k]));
    }
    return total;
  }

  // E-step then the (possibly MAP) M-step with [x]_+ clamping.
  std::vector<double> next_lambda(std::span<const double> lambda,
                                  double map_strength) const {
    const std::size_t T = tm_.num_topics();
    std::vector<double> resp(T, 0.0);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const double q = mixture_prob(tm_, lambda, words_[k]);
      for (std::size_t t = 0; t < T; ++t) {
        resp[t] += weights_[k] * lambda[t] * tm_.prob(t, words_[k]) / q;
      }
    }
    std::vector<double> next(T);
    double total = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      if (!std::isfinite(resp[t])) {
        throw EstimationError("non-finite responsibility for topic " +
                              std::to_string(t));
      }
      next[t] = std::max(0.0, resp[t] + map_strength);
      total += next[t];
    }
    if (!(total > 0.0)) {
      throw EstimationError("all topics clamped to zero with map_strength " +
                            std::to_string(map_strength));
    }
    for (double& x : next) x /= total;
    return next;
  }

 private:
  const TopicModel& tm_;
  std::vector<WordId> words_;
  std::vector<double> weights_;
};

void validate_config(const EstimatorConfig& cfg, std::size_t num_topics) {
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(cfg.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!std::isfinite(cfg.map_strength)) {
    throw std::invalid_argument("map_strength must be finite");
  }
  if (!cfg.initial_lambda.empty()) {
    if (cfg.initial_lambda.size() != num_topics) {
      throw std::invalid_argument("initial lambda has the wrong length");
    }
    double sum = 0.0;
    for (double l : cfg.initial_lambda) {
      if (!(l >= 0.0)) throw std::invalid_argument("negative initial lambda");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("initial lambda is not on the simplex");
    }
  }
}

MixtureWeights initial_weights(const EstimatorConfig& cfg,
                               std::size_t num_topics) {
  if (cfg.initial_lambda.empty()) return MixtureWeights::Uniform(num_topics);
  return MixtureWeights::FromLambda(cfg.initial_lambda);
}

template <typename Objective, typename Step>
FitResult run_em(MixtureWeights init, const EstimatorConfig& cfg,
                 Objective objective, Step step) {
  FitResult res;
  res.weights = std::move(init);
  double prev = objective(res.weights.lambda);
  if (!std::isfinite(prev)) {
    throw EstimationError("non-finite objective at the starting point");
  }
  res.objective_trace.push_back(prev);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    MixtureWeights next;
    double value = 0.0;
    try {
      next = step(res.weights);
      for (double l : next.lambda) {
        if (!std::isfinite(l)) throw EstimationError("non-finite lambda");
      }
      value = objective(next.lambda);
      if (!std::isfinite(value)) throw EstimationError("non-finite objective");
    } catch (const EstimationError& e) {
      throw EstimationError("iteration " + std::to_string(it) + " (last " +
                            "objective " + format_significant(prev, 17) +
                            "): " + e.what());
    }
    res.weights = std::move(next);
    res.objective_trace.push_back(value);
    res.iterations = it;
    if (std::abs(value - prev) <= cfg.rel_tol * std::abs(prev)) {
      res.converged = true;
      break;
    }
    prev = value;
  }
  return res;
}

FitResult fit_self(const WordCounts& counts, const TopicModel& tm,
                   const EstimatorConfig& cfg) {
  validate_config(cfg, tm.num_topics());
  const SelfProblem problem(counts, tm);
  const double m = cfg.map_strength;
  return run_em(
      initial_weights(cfg, tm.num_topics()), cfg,
      [&](std::span<const double> l) {
        return problem.loglik(l) + map_penalty(l, m);
      },
      [&](const MixtureWeights& w) {
        return MixtureWeights::FromLambda(problem.next_lambda(w.lambda, m));
      });
}

FitResult run_conf(const Conversation& conv, const TopicModel& tm,
                   const ChannelModel& cm, const EstimatorConfig& cfg) {
  validate_config(cfg, tm.num_topics());
  const bool use_tf = cfg.variant == Variant::kConfTf;
  const ConfusionProblem problem(conv, tm, cm, use_tf);
  const double m = cfg.map_strength;
  return run_em(
      initial_weights(cfg, tm.num_topics()), cfg,
      [&](std::span<const double> l) {
        return problem.loglik(l) + map_penalty(l, m);
      },
      [&](const MixtureWeights& w) {
        return MixtureWeights::FromMu(problem.next_mu(w.mu, m));
      });
}

void require_variant(const EstimatorConfig& cfg, Variant a, Variant b) {
  if (cfg.variant != a && cfg.variant != b) {
    throw std::invalid_argument("estimator called with variant " +
                                std::string(variant_name(cfg.variant)));
  }
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kSelfOneBest:
      return "self-1best";
    case Variant::kSelfTf:
      return "self-tf";
    case Variant::kConfOneBest:
      return "conf-1best";
    case Variant::kConfTf:
      return "conf-tf";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : {Variant::kSelfOneBest, Variant::kSelfTf,
                    Variant::kConfOneBest, Variant::kConfTf}) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

bool uses_channel(Variant v) {
  return v == Variant::kConfOneBest || v == Variant::kConfTf;
}

std::vector<double> topic_posterior(const TopicModel& tm,
                                    std::span<const double> lambda, WordId w) {
  const std::size_t T = tm.num_topics();
  std::vector<double> r(T);
  double z = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    r[t] = lambda[t] * tm.prob(t, w);
    z += r[t];
  }
  for (double& x : r) x /= z;
  return r;
}

double loglik_self_1best(const Conversation& conv, const TopicModel& tm,
                         std::span<const double> lambda) {
  return SelfProblem(one_best_counts(conv), tm).loglik(lambda);
}

double loglik_self_tf(const Conversation& conv, const TopicModel& tm,
                      std::span<const double> lambda) {
  return SelfProblem(expected_counts(conv), tm).loglik(lambda);
}

double map_penalty(std::span<const double> lambda, double map_strength) {
  if (map_strength == 0.0) return 0.0;
  double sum = 0.0;
  for (double l : lambda) {
    if (l > 0.0) {
      sum += std::log(l);
    } else if (map_strength > 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return map_strength * sum;
}

FitResult fit_self_1best(const Conversation& conv, const TopicModel& tm,
                         const EstimatorConfig& cfg) {
  require_variant(cfg, Variant::kSelfOneBest, Variant::kSelfOneBest);
  return fit_self(one_best_counts(conv), tm, cfg);
}

FitResult fit_self_tf(const Conversation& conv, const TopicModel& tm,
                      const EstimatorConfig& cfg) {
  require_variant(cfg, Variant::kSelfTf, Variant::kSelfTf);
  return fit_self(expected_counts(conv), tm, cfg);
}

std::vector<std::pair<WordId, double>> reference_posterior(
    const Bin& bin, const TopicModel& tm, std::span<const double> lambda,
    const ChannelModel& cm, WordId observed) {
  if (!bin.contains(observed)) {
    throw std::invalid_argument("observed word is not in the bin");
  }
  std::vector<std::pair<WordId, double>> r;
  r.reserve(bin.size());
  double z = 0.0;
  for (const Cell& c : bin.cells()) {
    const double x = mixture_prob(tm, lambda, c.word) * cm.prob(observed, c.word);
    r.emplace_back(c.word, x);
    z += x;
  }
  for (auto& [w, x] : r) {
    if (z > 0.0) {
      x /= z;
    } else {
      x = w == observed ? 1.0 : 0.0;
    }
  }
  return r;
}

double loglik_conf(const Conversation& conv, const TopicModel& tm,
                   std::span<const double> lambda, const ChannelModel& cm,
                   bool use_tf) {
  return ConfusionProblem(conv, tm, cm, use_tf).loglik(lambda);
}

FitResult fit_conf(const Conversation& conv, const TopicModel& tm,
                   const ChannelModel& cm, const EstimatorConfig& cfg) {
  require_variant(cfg, Variant::kConfOneBest, Variant::kConfTf);
  if (cfg.map_strength != 0.0) return fit_conf_map(conv, tm, cm, cfg);
  return run_conf(conv, tm, cm, cfg);
}

FitResult fit_conf_map(const Conversation& conv, const TopicModel& tm,
                       const ChannelModel& cm, const EstimatorConfig& cfg) {
  require_variant(cfg, Variant::kConfOneBest, Variant::kConfTf);
  if (cfg.map_strength == 0.0) {
    throw std::invalid_argument("fit_conf_map requires map_strength != 0");
  }
  return run_conf(conv, tm, cm, cfg);
}

FitResult fit(const Conversation& conv, const TopicModel& tm,
              const ChannelModel* cm, const EstimatorConfig& cfg) {
  switch (cfg.variant) {
    case Variant::kSelfOneBest:
      return fit_self_1best(conv, tm, cfg);
    case Variant::kSelfTf:
      return fit_self_tf(conv, tm, cfg);
    case Variant::kConfOneBest:
    case Variant::kConfTf:
      if (cm == nullptr) {
        throw std::invalid_argument(std::string(variant_name(cfg.variant)) +
                                    " requires a channel model");
      }
      return fit_conf(conv, tm, *cm, cfg);
  }
  throw std::invalid_argument("unknown variant");
}

double variant_objective(const Conversation& conv, const TopicModel& tm,
                         const ChannelModel* cm, Variant variant,
                         double map_strength, std::span<const double> lambda) {
  double value = 0.0;
  switch (variant) {
    case Variant::kSelfOneBest:
      value = loglik_self_1best(conv, tm, lambda);
      break;
    case Variant::kSelfTf:
      value = loglik_self_tf(conv, tm, lambda);
      break;
    case Variant::kConfOneBest:
    case Variant::kConfTf:
      if (cm == nullptr) throw std::invalid_argument("channel model required");
      value = loglik_conf(conv, tm, lambda, *cm, variant == Variant::kConfTf);
      break;
  }
  return value + map_penalty(lambda, map_strength);
}

std::vector<double> adapted_unigram(const TopicModel& tm,
                                    std::span<const double> lambda) {
  std::vector<double> q(tm.vocab_size(), 0.0);
  for (std::size_t w = 0; w < q.size(); ++w) {
    q[w] = mixture_prob(tm, lambda, static_cast<WordId>(w));
  }
  return q;
}

void write_lambda(std::ostream& out, const std::string& conversation_id,
                  const TopicModel& tm, std::span<const double> lambda) {
  out << "LAMBDA " << conversation_id << ' ' << tm.num_topics() << '\n';
  for (std::size_t t = 0; t < tm.num_topics(); ++t) {
    out << tm.labels()[t] << ' '
        << format_significant(lambda[t], kProbabilityDigits) << '\n';
  }
}

}  // namespace cnadapt
