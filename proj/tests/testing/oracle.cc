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

#include "oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cnadapt::testing {
namespace {

using BinCells = std::vector<std::pair<WordId, double>>;

// Observation weights over the bin's words.
std::vector<double> observation_weights(const BinCells& bin, bool tf) {
  std::vector<double> wgt(bin.size(), 0.0);
  if (tf) {
    for (std::size_t k = 0; k < bin.size(); ++k) wgt[k] = bin[k].second;
    return wgt;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < bin.size(); ++k) {
    const auto& [w, p] = bin[k];
    if (p > bin[best].second || (p == bin[best].second && w < bin[best].first)) {
      best = k;
    }
  }
  wgt[best] = 1.0;
  return wgt;
}

// Posterior over the bin's true words given observation v, plus p_i(v).
struct Explain {
  std::vector<double> r;
  double p = 0.0;
};

Explain explain(const Instance& inst, std::span<const double> lambda,
                const BinCells& bin, WordId v) {
  Explain e;
  e.r.assign(bin.size(), 0.0);
  double z = 0.0;
  double joint = 0.0;
  for (std::size_t k = 0; k < bin.size(); ++k) {
    const WordId w = bin[k].first;
    const double q = oracle_mixture(inst, lambda, w);
    z += q;
    e.r[k] = q * inst.channel[w][v];
    joint += e.r[k];
  }
  if (joint == 0.0) {
    for (std::size_t k = 0; k < bin.size(); ++k) {
      if (bin[k].first == v) {
        e.r[k] = 1.0;
        e.p = oracle_mixture(inst, lambda, v) / z;
      }
    }
    return e;
  }
  for (double& x : e.r) x /= joint;
  e.p = joint / z;
  return e;
}

}  // namespace

double oracle_mixture(const Instance& inst, std::span<const double> lambda,
                      WordId w) {
  double q = 0.0;
  for (std::size_t t = 0; t < inst.num_topics; ++t) {
    q += lambda[t] * inst.topics[t][w];
  }
  return q;
}

double oracle_prior(std::span<const double> lambda, double map_strength) {
  if (map_strength == 0.0) return 0.0;
  double s = 0.0;
  for (double l : lambda) {
    if (l > 0.0) {
      s += std::log(l);
    } else if (map_strength > 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  return map_strength * s;
}

double oracle_self_objective(const Instance& inst,
                             std::span<const double> lambda, bool tf,
                             double map_strength) {
  double f = 0.0;
  for (const auto& bin : inst.bins) {
    const auto wgt = observation_weights(bin, tf);
    for (std::size_t k = 0; k < bin.size(); ++k) {
      if (wgt[k] > 0.0) {
        f += wgt[k] * std::log(oracle_mixture(inst, lambda, bin[k].first));
      }
    }
  }
  return f + oracle_prior(lambda, map_strength);
}

double oracle_conf_objective(const Instance& inst,
                             std::span<const double> lambda, bool tf,
                             double map_strength) {
  double f = 0.0;
  for (const auto& bin : inst.bins) {
    const auto wgt = observation_weights(bin, tf);
    for (std::size_t k = 0; k < bin.size(); ++k) {
      if (wgt[k] > 0.0) {
        f += wgt[k] * std::log(explain(inst, lambda, bin, bin[k].first).p);
      }
    }
  }
  return f + oracle_prior(lambda, map_strength);
}

double oracle_q_difference(const Instance& inst,
                           std::span<const double> lambda_old,
                           std::span<const double> lambda_new, bool tf,
                           double map_strength) {
  double diff = 0.0;
  for (const auto& bin : inst.bins) {
    double z_old = 0.0;
    double z_new = 0.0;
    for (const auto& [w, p] : bin) {
      z_old += oracle_mixture(inst, lambda_old, w);
      z_new += oracle_mixture(inst, lambda_new, w);
    }
    const auto wgt = observation_weights(bin, tf);
    for (std::size_t k = 0; k < bin.size(); ++k) {
      if (wgt[k] == 0.0) continue;
      const Explain e = explain(inst, lambda_old, bin, bin[k].first);
      for (std::size_t j = 0; j < bin.size(); ++j) {
        if (e.r[j] == 0.0) continue;
        const WordId w = bin[j].first;
        diff += wgt[k] * e.r[j] *
                (std::log(oracle_mixture(inst, lambda_new, w) /
                          oracle_mixture(inst, lambda_old, w)) -
                 std::log(z_new / z_old));
      }
    }
  }
  return diff + oracle_prior(lambda_new, map_strength) -
         oracle_prior(lambda_old, map_strength);
}

std::vector<double> softmax(std::span<const double> mu) {
  const double hi = *std::max_element(mu.begin(), mu.end());
  std::vector<double> out(mu.size());
  double s = 0.0;
  for (std::size_t t = 0; t < mu.size(); ++t) {
    out[t] = std::exp(mu[t] - hi);
    s += out[t];
  }
  for (double& x : out) x /= s;
  return out;
}

}  // namespace cnadapt::testing
