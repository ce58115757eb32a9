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

// Reference implementations of the estimation objectives, written directly
// from the definitions over dense arrays. Slow and independent of the
// library's precomputed per-bin data.

#ifndef CNADAPT_TESTS_TESTING_ORACLE_H_
#define CNADAPT_TESTS_TESTING_ORACLE_H_

#include <span>
#include <vector>

#include "instance.h"

namespace cnadapt::testing {

double oracle_mixture(const Instance& inst, std::span<const double> lambda,
                      WordId w);

// map_strength * sum_t ln lambda_t; -inf on the boundary for a positive
// strength, clamped (zero) topics skipped for a negative one.
double oracle_prior(std::span<const double> lambda, double map_strength);

// Self-training: sum_i ln q(1-best_i), or sum_i sum_w s_i(w) ln q(w).
double oracle_self_objective(const Instance& inst,
                             std::span<const double> lambda, bool tf,
                             double map_strength = 0.0);

// Channel-aware: sum over observations v of weight * ln p_i(v), with
// p_i(v) = sum_{w in b_i} q(w) p_c(v|w) / sum_{w in b_i} q(w). An
// observation no bin word can produce goes through an identity channel.
double oracle_conf_objective(const Instance& inst,
                             std::span<const double> lambda, bool tf,
                             double map_strength = 0.0);

// Q(new) - Q(old) of the channel-aware EM auxiliary function, posteriors
// over true words taken at lambda_old, plus the prior difference.
double oracle_q_difference(const Instance& inst,
                           std::span<const double> lambda_old,
                           std::span<const double> lambda_new, bool tf,
                           double map_strength = 0.0);

std::vector<double> softmax(std::span<const double> mu);

}  // namespace cnadapt::testing

#endif  // CNADAPT_TESTS_TESTING_ORACLE_H_
