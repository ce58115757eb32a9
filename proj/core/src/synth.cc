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

#include "cnadapt/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {
namespace {

std::vector<double> resolved_lambda(const SynthSpec& spec) {
  if (!spec.lambda_true.empty()) return spec.lambda_true;
  return std::vector<double>(spec.num_topics,
                             1.0 / static_cast<double>(spec.num_topics));
}

std::vector<double> draw_dirichlet(std::size_t n, double concentration,
                                   std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& v : x) {
    v = gamma(rng);
    sum += v;
  }
  if (!(sum > 0.0)) {
    // Every draw underflowed; put the mass on one word.
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    x[pick(rng)] = 1.0;
    sum = 1.0;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

void validate_synth_spec(const SynthSpec& spec) {
  if (spec.num_topics < 1) throw ValidationError("synth: num_topics < 1");
  if (spec.vocab_size < 1) throw ValidationError("synth: vocab_size < 1");
  if (!spec.lambda_true.empty()) {
    if (spec.lambda_true.size() != spec.num_topics) {
      throw ValidationError("synth: lambda_true has the wrong length");
    }
    double sum = 0.0;
    for (double l : spec.lambda_true) {
      if (!(l >= 0.0)) throw ValidationError("synth: negative lambda_true");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("synth: lambda_true is not on the simplex");
    }
  }
  if (!(spec.topic_sharpness > 0.0) || !std::isfinite(spec.topic_sharpness)) {
    throw ValidationError("synth: topic_sharpness must be positive");
  }
  if (!(spec.channel_noise >= 0.0 && spec.channel_noise < 1.0)) {
    throw ValidationError("synth: channel_noise must lie in [0, 1)");
  }
  if (spec.num_bins < 1) throw ValidationError("synth: num_bins < 1");
  if (spec.bin_width < 1 || spec.bin_width > spec.vocab_size) {
    throw ValidationError("synth: bin_width must lie in [1, vocab_size]");
  }
  if (spec.bins_per_network < 1) {
    throw ValidationError("synth: bins_per_network < 1");
  }
  if (spec.num_conversations < 1) {
    throw ValidationError("synth: num_conversations < 1");
  }
}

Vocabulary synth_vocabulary(std::size_t vocab_size) {
  Vocabulary vocab;
  for (std::size_t w = 0; w < vocab_size; ++w) {
    vocab.intern("w" + std::to_string(w));
  }
  return vocab;
}

SynthSample sample_conversation(const SynthSpec& spec, std::size_t index) {
  validate_synth_spec(spec);
  std::mt19937_64 rng(spec.seed ^ static_cast<std::uint64_t>(index));
  const std::size_t T = spec.num_topics;
  const std::size_t V = spec.vocab_size;
  const auto lambda = resolved_lambda(spec);

  // Topic rows.
  std::vector<std::string> labels;
  std::vector<double> probs;
  probs.reserve(T * V);
  for (std::size_t t = 0; t < T; ++t) {
    labels.push_back("topic" + std::to_string(t));
    auto row = draw_dirichlet(V, spec.topic_sharpness, rng);
    apply_probability_floor(row, kProbabilityFloor);
    probs.insert(probs.end(), row.begin(), row.end());
  }
  TopicModel topics(std::move(labels), V, std::move(probs));

  // Channel: each word keeps 1 - noise on itself and spreads the noise over
  // a random cohort of bin_width - 1 other words.
  std::map<WordId, ChannelModel::Row> rows;
  const std::size_t cohort_size = spec.bin_width - 1;
  const bool noisy = spec.channel_noise > 0.0 && cohort_size > 0;
  std::vector<WordId> others(V);
  for (std::size_t w = 0; w < V; ++w) {
    ChannelModel::Row row;
    if (!noisy) {
      row.emplace_back(static_cast<WordId>(w), 1.0);
    } else {
      row.emplace_back(static_cast<WordId>(w), 1.0 - spec.channel_noise);
      std::iota(others.begin(), others.end(), WordId{0});
      std::swap(others[w], others[V - 1]);  // exclude w
      for (std::size_t k = 0; k < cohort_size; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, V - 2);
        std::swap(others[k], others[pick(rng)]);
        row.emplace_back(others[k], spec.channel_noise /
                                        static_cast<double>(cohort_size));
      }
    }
    rows.emplace(static_cast<WordId>(w), std::move(row));
  }
  ChannelModel channel(std::move(rows));

  // confusers[v]: words w with p_c(v|w) > 0.
  std::vector<std::vector<WordId>> confusers(V);
  for (const auto& [w, row] : channel.rows()) {
    for (const auto& [v, p] : row) confusers[v].push_back(w);
  }

  std::discrete_distribution<std::size_t> topic_dist(lambda.begin(),
                                                     lambda.end());
  std::vector<std::discrete_distribution<std::size_t>> word_dist;
  for (std::size_t t = 0; t < T; ++t) {
    auto r = topics.row(t);
    word_dist.emplace_back(r.begin(), r.end());
  }
  std::vector<std::discrete_distribution<std::size_t>> channel_dist;
  for (std::size_t w = 0; w < V; ++w) {
    std::vector<double> p;
    for (const auto& e : *channel.row(static_cast<WordId>(w))) {
      p.push_back(e.second);
    }
    channel_dist.emplace_back(p.begin(), p.end());
  }
  const auto q = [&] {
    std::vector<double> out(V, 0.0);
    for (std::size_t w = 0; w < V; ++w) {
      out[w] = mixture_prob(topics, lambda, static_cast<WordId>(w));
    }
    return out;
  }();

  SynthTruth truth;
  truth.lambda = lambda;
  std::vector<Bin> bins;
  bins.reserve(spec.num_bins);
  std::vector<std::pair<double, WordId>> scored;
  for (std::size_t i = 0; i < spec.num_bins; ++i) {
    const std::size_t t = topic_dist(rng);
    const auto w = static_cast<WordId>(word_dist[t](rng));
    const auto* row = channel.row(w);
    const WordId observed = (*row)[channel_dist[w](rng)].first;
    truth.topic_per_bin.push_back(t);
    truth.references.push_back(w);

    scored.clear();
    for (WordId v : confusers[observed]) {
      scored.emplace_back(q[v] * channel.prob(observed, v), v);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (scored.size() > spec.bin_width) {
      auto it = std::find_if(scored.begin(), scored.end(), [&](const auto& e) {
        return e.second == observed;
      });
      if (it - scored.begin() >= static_cast<std::ptrdiff_t>(spec.bin_width)) {
        std::swap(scored[spec.bin_width - 1], *it);
      }
      scored.resize(spec.bin_width);
    }
    double z = 0.0;
    for (const auto& e : scored) z += e.first;

    std::vector<Cell> cells;
    for (const auto& [score, v] : scored) cells.push_back({v, score / z});
    // The recognized word must lead the bin: give it the largest posterior.
    auto top = std::max_element(
        cells.begin(), cells.end(),
        [](const Cell& a, const Cell& b) { return a.posterior < b.posterior; });
    auto obs = std::find_if(cells.begin(), cells.end(),
                            [&](const Cell& c) { return c.word == observed; });
    std::swap(top->posterior, obs->posterior);

    std::vector<Cell> quantized;
    double lead = 0.0;
    for (const Cell& c : cells) {
      const double p = quantize_posterior(c.posterior);
      if (c.word == observed) lead = p;
      if (p > 0.0) quantized.push_back({c.word, p});
    }
    for (Cell& c : quantized) {
      // A tie with a lower word id would steal the 1-best slot.
      if (c.word != observed && c.posterior == lead && c.word < observed) {
        for (Cell& o : quantized) {
          if (o.word == observed) {
            o.posterior = quantize_posterior(o.posterior + 1e-9);
          }
        }
        break;
      }
    }
    bins.push_back(Bin::FromCells(std::move(quantized)));
  }

  std::vector<ConfusionNetwork> nets;
  const std::string conv_id = "conv" + std::to_string(index);
  for (std::size_t start = 0; start < bins.size();
       start += spec.bins_per_network) {
    const std::size_t end = std::min(bins.size(), start + spec.bins_per_network);
    ConfusionNetwork net{conv_id + "-u" + std::to_string(nets.size()), {}};
    net.bins.assign(bins.begin() + static_cast<std::ptrdiff_t>(start),
                    bins.begin() + static_cast<std::ptrdiff_t>(end));
    nets.push_back(std::move(net));
  }

  truth.topics = std::move(topics);
  truth.channel = std::move(channel);
  return {Conversation(conv_id, std::move(nets)), std::move(truth)};
}

void write_truth(std::ostream& out, const SynthSample& sample,
                 const Vocabulary& vocab) {
  const auto& truth = sample.truth;
  out << "TRUTH " << sample.conversation.id() << '\n';
  out << "LAMBDA " << truth.lambda.size() << '\n';
  for (std::size_t t = 0; t < truth.lambda.size(); ++t) {
    out << truth.topics.labels()[t] << ' '
        << format_significant(truth.lambda[t], kProbabilityDigits) << '\n';
  }
  out << "REFERENCE " << truth.references.size() << '\n';
  for (WordId w : truth.references) out << vocab.word(w) << '\n';
  write_channel(out, truth.channel, vocab);
}

}  // namespace cnadapt
