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

#ifndef CNADAPT_TOOLS_CLI_H_
#define CNADAPT_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnadapt/adapt.h"
#include "cnadapt/confusion_network.h"

namespace cnadapt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitComputationFailure = 1,
  kExitUsageError = 2,
};

struct TopicsTrainOptions {
  std::string corpus_dir;  // <topic-label>/<file>.txt
  std::string out_model;
  std::string vocab_file;  // optional extra vocabulary, whitespace separated
};

struct ChannelOptions {
  std::vector<std::string> inputs;  // files, directories or glob patterns
  std::string out_channel;
  double rel_floor = kDefaultRelFloor;
  std::size_t max_words = kDefaultMaxWords;
};

struct AdaptOptions {
  std::string input;  // CNET file, or a directory of *.cnet files
  std::string topic_model;
  std::string variant = "self-1best";
  std::string channel;
  double map_strength = 0.0;
  double rel_tol = kDefaultRelTol;
  int max_iters = kDefaultMaxIters;
  double rel_floor = kDefaultRelFloor;
  std::size_t max_words = kDefaultMaxWords;
  std::string out_lambda;   // file mode
  std::string out_unigram;  // file mode, optional
  std::string out_dir;      // directory mode
  unsigned threads = 0;     // 0: hardware concurrency
};

struct PplOptions {
  std::string unigram;
  std::string reference;
  std::vector<std::uint64_t> thresholds{1, 2, 3, 4, 5};
  std::string out_report;  // optional copy of the printed rows
};

struct SynthOptions {
  std::string spec_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_topics_train(const TopicsTrainOptions& opts, std::ostream& out,
                     std::ostream& err);
int cmd_channel(const ChannelOptions& opts, std::ostream& out,
                std::ostream& err);
int cmd_adapt(const AdaptOptions& opts, std::ostream& out, std::ostream& err);
int cmd_ppl(const PplOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv (subcommand style) and runs the command.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cnadapt::cli

#endif  // CNADAPT_TOOLS_CLI_H_
