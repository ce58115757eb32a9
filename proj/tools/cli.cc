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

#include "cli.h"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "cnadapt/channel.h"
#include "cnadapt/cnet_io.h"
#include "cnadapt/errors.h"
#include "cnadapt/eval.h"
#include "cnadapt/number_format.h"
#include "cnadapt/synth.h"
#include "cnadapt/topic_model.h"
#include "json.hpp"
#include "manifest.h"

namespace cnadapt::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Missing or unreadable inputs, bad flag combinations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const TrainingError& e) {
    err << "training error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const EstimationError& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitComputationFailure;
  } catch (const EvaluationError& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kExitComputationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputationFailure;
  }
}

std::vector<std::string> read_tokens(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::vector<std::string> sorted_files(const fs::path& dir,
                                      const std::string& extension) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == extension) {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs,
                                       const std::string& extension) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      auto found = sorted_files(in, extension);
      files.insert(files.end(), found.begin(), found.end());
    } else if (in.find_first_of("*?[") != std::string::npos) {
      glob_t g{};
      if (::glob(in.c_str(), 0, nullptr, &g) == 0) {
        for (std::size_t k = 0; k < g.gl_pathc; ++k) {
          files.emplace_back(g.gl_pathv[k]);
        }
      }
      ::globfree(&g);
    } else if (fs::is_regular_file(in)) {
      files.push_back(in);
    } else {
      throw InputError("no such file: " + in);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

struct PreparedConversation {
  Conversation conversation;
  std::size_t dropped_cells = 0;
  std::size_t dropped_bins = 0;
};

// Prunes bins, then maps words the topic model does not know onto <unk>
// (merging duplicates) or drops them when the model has no <unk>.
PreparedConversation prepare_conversation(const Conversation& raw,
                                          const Vocabulary& vocab,
                                          std::size_t model_vocab,
                                          double rel_floor,
                                          std::size_t max_words) {
  const auto unk = vocab.find(kUnknownWord);
  const bool have_unk = unk && *unk < model_vocab;
  PreparedConversation out;
  std::vector<ConfusionNetwork> nets;
  for (const auto& net : raw.networks()) {
    ConfusionNetwork kept{net.utterance_id, {}};
    for (const Bin& b : net.bins) {
      const Bin pruned = prune_bin(b, rel_floor, max_words);
      std::map<WordId, double> merged;
      for (const Cell& c : pruned.cells()) {
        if (c.word < model_vocab) {
          merged[c.word] += c.posterior;
        } else if (have_unk) {
          merged[*unk] += c.posterior;
        } else {
          ++out.dropped_cells;
        }
      }
      if (merged.empty()) {
        ++out.dropped_bins;
        continue;
      }
      std::vector<Cell> cells;
      for (const auto& [w, p] : merged) cells.push_back({w, std::min(p, 1.0)});
      kept.bins.push_back(Bin::FromCells(std::move(cells)));
    }
    if (!kept.bins.empty()) nets.push_back(std::move(kept));
  }
  if (nets.empty()) {
    throw ValidationError("conversation '" + raw.id() +
                          "' has no bins inside the model vocabulary");
  }
  out.conversation = Conversation(raw.id(), std::move(nets));
  return out;
}

ordered_json fit_report(const std::string& conv_id, const EstimatorConfig& cfg,
                        const FitResult& res, const TopicModel& tm,
                        const PreparedConversation& prep) {
  ordered_json j;
  j["conversation"] = conv_id;
  j["variant"] = variant_name(cfg.variant);
  j["map_strength"] = cfg.map_strength;
  j["bins"] = prep.conversation.total_bins();
  j["dropped_cells"] = prep.dropped_cells;
  j["dropped_bins"] = prep.dropped_bins;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["objective_trace"] = res.objective_trace;
  ordered_json lambda = ordered_json::object();
  for (std::size_t t = 0; t < tm.num_topics(); ++t) {
    lambda[tm.labels()[t]] = res.weights.lambda[t];
  }
  j["lambda"] = lambda;
  return j;
}

std::string format_threshold(std::uint64_t thr) {
  return thr == kNoThreshold ? "inf" : std::to_string(thr);
}

SynthSpec read_synth_spec(const std::string& path) {
  auto in = open_input(path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  SynthSpec spec;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "topics") {
        spec.num_topics = value.get<std::size_t>();
      } else if (key == "vocab") {
        spec.vocab_size = value.get<std::size_t>();
      } else if (key == "lambda") {
        spec.lambda_true = value.get<std::vector<double>>();
      } else if (key == "topic_sharpness") {
        spec.topic_sharpness = value.get<double>();
      } else if (key == "channel_noise") {
        spec.channel_noise = value.get<double>();
      } else if (key == "bins") {
        spec.num_bins = value.get<std::size_t>();
      } else if (key == "bin_width") {
        spec.bin_width = value.get<std::size_t>();
      } else if (key == "bins_per_network") {
        spec.bins_per_network = value.get<std::size_t>();
      } else if (key == "conversations") {
        spec.num_conversations = value.get<std::size_t>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else {
        throw InputError(path + ": unknown field '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return spec;
}

}  // namespace

int cmd_topics_train(const TopicsTrainOptions& opts, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    const WallTimer timer;
    if (!fs::is_directory(opts.corpus_dir)) {
      throw InputError("corpus directory not found: " + opts.corpus_dir);
    }
    std::vector<fs::path> topic_dirs;
    for (const auto& entry : fs::directory_iterator(opts.corpus_dir)) {
      if (entry.is_directory()) topic_dirs.push_back(entry.path());
    }
    std::sort(topic_dirs.begin(), topic_dirs.end());
    if (topic_dirs.empty()) {
      throw InputError("no topic folders under " + opts.corpus_dir);
    }

    Vocabulary vocab;
    vocab.intern(kUnknownWord);
    RunManifest manifest{"topics-train", {opts.corpus_dir}};
    if (!opts.vocab_file.empty()) {
      for (const auto& w : read_tokens(opts.vocab_file)) vocab.intern(w);
      manifest.inputs.push_back(opts.vocab_file);
    }

    std::vector<LabeledDocument> corpus;
    for (const auto& dir : topic_dirs) {
      LabeledDocument doc{dir.filename().string(), {}};
      for (const auto& file : sorted_files(dir, ".txt")) {
        auto tokens = read_tokens(file);
        doc.tokens.insert(doc.tokens.end(), tokens.begin(), tokens.end());
      }
      if (doc.tokens.empty()) {
        throw InputError("topic folder '" + dir.string() +
                         "' has no transcript tokens");
      }
      corpus.push_back(std::move(doc));
    }

    const TopicModel tm = train_topic_model(corpus, vocab);
    {
      auto os = open_output(opts.out_model);
      write_topic_model(os, tm, vocab);
    }
    out << "topics T=" << tm.num_topics() << " V=" << tm.vocab_size() << '\n';

    manifest.parameters["out_model"] = opts.out_model;
    manifest.wall_time_seconds = timer.seconds();
    manifest.write(opts.out_model + ".manifest.json");
    return kExitOk;
  });
}

int cmd_channel(const ChannelOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const WallTimer timer;
    if (!(opts.rel_floor >= 0.0 && opts.rel_floor <= 1.0) ||
        opts.max_words < 1) {
      throw InputError("--rel-floor must lie in [0, 1] and --max-words >= 1");
    }
    const auto files = expand_inputs(opts.inputs, ".cnet");
    if (files.empty()) throw InputError("no CNET files matched");

    Vocabulary vocab;
    CooccurrenceCounts counts;
    for (const auto& f : files) {
      auto in = open_input(f);
      const Conversation conv = parse_conversation(in, vocab);
      accumulate_cooccurrences(conv, opts.rel_floor, opts.max_words, counts);
    }
    const ChannelModel cm = normalize_cooccurrences(counts);
    {
      auto os = open_output(opts.out_channel);
      write_channel(os, cm, vocab);
    }
    out << "channel rows=" << cm.num_rows() << " files=" << files.size()
        << '\n';

    RunManifest manifest{"channel", files};
    manifest.parameters["rel_floor"] = opts.rel_floor;
    manifest.parameters["max_words"] = opts.max_words;
    manifest.parameters["out_channel"] = opts.out_channel;
    manifest.wall_time_seconds = timer.seconds();
    manifest.write(opts.out_channel + ".manifest.json");
    return kExitOk;
  });
}

int cmd_adapt(const AdaptOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WallTimer timer;
    const auto variant = parse_variant(opts.variant);
    if (!variant) throw InputError("unknown variant '" + opts.variant + "'");
    if (uses_channel(*variant) && opts.channel.empty()) {
      throw InputError("variant " + opts.variant + " requires --channel");
    }
    if (!uses_channel(*variant) && !opts.channel.empty()) {
      throw InputError("variant " + opts.variant + " does not use --channel");
    }
    if (opts.max_iters < 1 || !(opts.rel_tol > 0.0)) {
      throw InputError("--max-iters must be >= 1 and --tol > 0");
    }
    if (!(opts.rel_floor >= 0.0 && opts.rel_floor <= 1.0) ||
        opts.max_words < 1) {
      throw InputError("--rel-floor must lie in [0, 1] and --max-words >= 1");
    }
    const bool dir_mode = fs::is_directory(opts.input);
    if (dir_mode && opts.out_dir.empty()) {
      throw InputError("directory input requires --out-dir");
    }
    if (!dir_mode && opts.out_lambda.empty()) {
      throw InputError("file input requires --out-lambda");
    }

    Vocabulary vocab;
    TopicModel tm;
    {
      auto in = open_input(opts.topic_model);
      tm = read_topic_model(in, vocab);
    }
    ChannelModel cm;
    if (!opts.channel.empty()) {
      auto in = open_input(opts.channel);
      cm = read_channel(in, vocab);
    }

    const std::vector<std::string> files =
        dir_mode ? sorted_files(opts.input, ".cnet")
                 : std::vector<std::string>{opts.input};
    if (files.empty()) throw InputError("no CNET files in " + opts.input);

    // Vocabulary growth happens here, before any worker starts.
    std::vector<PreparedConversation> convs;
    for (const auto& f : files) {
      auto in = open_input(f);
      const Conversation raw = parse_conversation(in, vocab);
      convs.push_back(prepare_conversation(raw, vocab, tm.vocab_size(),
                                           opts.rel_floor, opts.max_words));
    }

    EstimatorConfig cfg;
    cfg.variant = *variant;
    cfg.map_strength = opts.map_strength;
    cfg.max_iters = opts.max_iters;
    cfg.rel_tol = opts.rel_tol;
    const ChannelModel* cm_ptr = uses_channel(*variant) ? &cm : nullptr;

    std::vector<std::optional<FitResult>> results(convs.size());
    std::vector<std::string> failures(convs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < convs.size(); k = next++) {
        try {
          results[k] = fit(convs[k].conversation, tm, cm_ptr, cfg);
        } catch (const EstimationError& e) {
          failures[k] = e.what();
        }
      }
    };
    unsigned n_threads = opts.threads != 0
                             ? opts.threads
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(
        std::min<std::size_t>(n_threads, convs.size()));
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    bool failed = false;
    for (std::size_t k = 0; k < convs.size(); ++k) {
      const auto& conv = convs[k].conversation;
      if (!results[k]) {
        err << "estimation failed for " << conv.id() << ": " << failures[k]
            << '\n';
        failed = true;
        continue;
      }
      const FitResult& res = *results[k];
      const std::string lambda_path =
          dir_mode ? (fs::path(opts.out_dir) / (conv.id() + ".lambda")).string()
                   : opts.out_lambda;
      std::string unigram_path =
          dir_mode
              ? (fs::path(opts.out_dir) / (conv.id() + ".unigram")).string()
              : opts.out_unigram;
      if (dir_mode) fs::create_directories(opts.out_dir);
      {
        auto os = open_output(lambda_path);
        write_lambda(os, conv.id(), tm, res.weights.lambda);
      }
      if (!unigram_path.empty()) {
        auto os = open_output(unigram_path);
        write_unigram(os, adapted_unigram(tm, res.weights.lambda), vocab);
      }
      {
        auto os = open_output(lambda_path + ".report.json");
        os << fit_report(conv.id(), cfg, res, tm, convs[k]).dump(2) << '\n';
      }
      out << conv.id() << " iterations=" << res.iterations
          << " converged=" << (res.converged ? "yes" : "no") << " objective="
          << format_significant(res.objective_trace.back(), 12) << '\n';
    }

    RunManifest manifest{"adapt", files};
    manifest.inputs.push_back(opts.topic_model);
    if (!opts.channel.empty()) manifest.inputs.push_back(opts.channel);
    auto& p = manifest.parameters;
    p["variant"] = opts.variant;
    p["map_strength"] = opts.map_strength;
    p["tol"] = opts.rel_tol;
    p["max_iters"] = opts.max_iters;
    p["rel_floor"] = opts.rel_floor;
    p["max_words"] = opts.max_words;
    manifest.wall_time_seconds = timer.seconds();
    manifest.write(dir_mode
                       ? (fs::path(opts.out_dir) / "manifest.json").string()
                       : opts.out_lambda + ".manifest.json");
    return failed ? kExitComputationFailure : kExitOk;
  });
}

int cmd_ppl(const PplOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WallTimer timer;
    Vocabulary vocab;
    std::vector<double> model;
    {
      auto in = open_input(opts.unigram);
      model = read_unigram(in, vocab);
    }
    ReferenceCorpus corpus;
    {
      auto in = open_input(opts.reference);
      corpus = read_reference(in, vocab);
    }
    if (corpus.size() == 0) throw InputError("empty reference transcript");

    std::ostringstream rows;
    for (std::uint64_t thr : opts.thresholds) {
      if (thr < 1) throw InputError("--thr values must be >= 1");
      std::string value;
      try {
        value = format_significant(
            constrained_perplexity(model, corpus, thr, &vocab), 10);
      } catch (const EvaluationError& e) {
        // A threshold below every count selects nothing; other failures
        // (zero-probability tokens) are fatal.
        if (std::none_of(corpus.counts().begin(), corpus.counts().end(),
                         [&](const auto& kv) { return kv.second <= thr; })) {
          value = "NA";
        } else {
          throw;
        }
      }
      rows << "cppl\t" << format_threshold(thr) << '\t' << value << '\n';
    }
    rows << "ppl\t" << format_threshold(kNoThreshold) << '\t'
         << format_significant(perplexity(model, corpus, &vocab), 10) << '\n';
    out << rows.str();

    if (!opts.out_report.empty()) {
      {
        auto os = open_output(opts.out_report);
        os << rows.str();
      }
      RunManifest manifest{"ppl", {opts.unigram, opts.reference}};
      std::vector<std::string> thr;
      for (auto t : opts.thresholds) thr.push_back(format_threshold(t));
      manifest.parameters["thresholds"] = thr;
      manifest.wall_time_seconds = timer.seconds();
      manifest.write(opts.out_report + ".manifest.json");
    }
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const WallTimer timer;
    SynthSpec spec = read_synth_spec(opts.spec_file);
    if (opts.seed) spec.seed = *opts.seed;
    validate_synth_spec(spec);
    fs::create_directories(opts.out_dir);

    const Vocabulary vocab = synth_vocabulary(spec.vocab_size);
    for (std::size_t k = 0; k < spec.num_conversations; ++k) {
      const SynthSample sample = sample_conversation(spec, k);
      const fs::path base = fs::path(opts.out_dir) / sample.conversation.id();
      {
        auto os = open_output(base.string() + ".cnet");
        write_conversation(os, sample.conversation, vocab);
      }
      {
        auto os = open_output(base.string() + ".truth.txt");
        write_truth(os, sample, vocab);
      }
      {
        auto os = open_output(base.string() + ".topics.txt");
        write_topic_model(os, sample.truth.topics, vocab);
      }
      {
        auto os = open_output(base.string() + ".channel.txt");
        write_channel(os, sample.truth.channel, vocab);
      }
      out << sample.conversation.id()
          << " bins=" << sample.conversation.total_bins() << '\n';
    }

    RunManifest manifest{"synth", {opts.spec_file}};
    auto& p = manifest.parameters;
    p["topics"] = spec.num_topics;
    p["vocab"] = spec.vocab_size;
    p["lambda"] = spec.lambda_true;
    p["topic_sharpness"] = spec.topic_sharpness;
    p["channel_noise"] = spec.channel_noise;
    p["bins"] = spec.num_bins;
    p["bin_width"] = spec.bin_width;
    p["bins_per_network"] = spec.bins_per_network;
    p["conversations"] = spec.num_conversations;
    manifest.seed = spec.seed;
    manifest.wall_time_seconds = timer.seconds();
    manifest.write((fs::path(opts.out_dir) / "manifest.json").string());
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Topic mixture adaptation from ASR confusion networks",
               "cnadapt"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  TopicsTrainOptions topics;
  auto* topics_cmd =
      app.add_subcommand("topics-train", "Train Witten-Bell topic unigrams");
  topics_cmd->add_option("corpus-dir", topics.corpus_dir,
                         "Directory of <topic-label>/<file>.txt transcripts")
      ->required();
  topics_cmd->add_option("out-model", topics.out_model, "Output topic model")
      ->required();
  topics_cmd->add_option("--vocab", topics.vocab_file,
                         "Extra vocabulary words to smooth over");

  ChannelOptions channel;
  auto* channel_cmd =
      app.add_subcommand("channel", "Estimate the ASR confusion channel");
  channel_cmd->add_option("--out", channel.out_channel, "Output channel file")
      ->required();
  channel_cmd->add_option("--rel-floor", channel.rel_floor,
                          "Drop words under this fraction of the bin max");
  channel_cmd->add_option("--max-words", channel.max_words,
                          "Keep at most this many words per bin");
  channel_cmd->add_option("cnet", channel.inputs,
                          "CNET files, directories or glob patterns")
      ->required();

  AdaptOptions adapt;
  auto* adapt_cmd =
      app.add_subcommand("adapt", "Estimate conversation topic weights");
  adapt_cmd->add_option("cnet", adapt.input, "CNET file or directory")
      ->required();
  adapt_cmd->add_option("topic-model", adapt.topic_model, "Topic model file")
      ->required();
  adapt_cmd->add_option("--variant", adapt.variant,
                        "self-1best | self-tf | conf-1best | conf-tf");
  adapt_cmd->add_option("--channel", adapt.channel,
                        "Channel file (conf-* variants)");
  adapt_cmd->add_option("--map-strength", adapt.map_strength,
                        "beta*(alpha-1) of the Dirichlet prior; 0 = MLE");
  adapt_cmd->add_option("--tol", adapt.rel_tol,
                        "Relative objective change to stop at");
  adapt_cmd->add_option("--max-iters", adapt.max_iters, "Iteration cap");
  adapt_cmd->add_option("--rel-floor", adapt.rel_floor, "Bin pruning floor");
  adapt_cmd->add_option("--max-words", adapt.max_words, "Bin pruning width");
  adapt_cmd->add_option("--out-lambda", adapt.out_lambda,
                        "LAMBDA output (file input)");
  adapt_cmd->add_option("--out-unigram", adapt.out_unigram,
                        "Adapted unigram output (file input)");
  adapt_cmd->add_option("--out-dir", adapt.out_dir,
                        "Output directory (directory input)");
  adapt_cmd->add_option("--threads", adapt.threads,
                        "Worker threads for directory input");

  PplOptions ppl;
  std::vector<std::string> thr_text;
  auto* ppl_cmd = app.add_subcommand("ppl", "Perplexity of a unigram model");
  ppl_cmd->add_option("unigram", ppl.unigram, "Unigram file")->required();
  ppl_cmd->add_option("reference", ppl.reference, "Reference transcript")
      ->required();
  ppl_cmd->add_option("--thr", thr_text,
                      "Count thresholds for constrained perplexity");
  ppl_cmd->add_option("--out", ppl.out_report, "Also write rows to this file");

  SynthOptions synth;
  std::uint64_t seed = 0;
  auto* synth_cmd =
      app.add_subcommand("synth", "Sample synthetic confusion networks");
  synth_cmd->add_option("spec-file", synth.spec_file, "JSON synth spec")
      ->required();
  synth_cmd->add_option("out-dir", synth.out_dir, "Output directory")
      ->required();
  auto* seed_opt = synth_cmd->add_option("--seed", seed, "Override the seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto* failed = app.get_subcommands().empty()
                             ? &app
                             : app.get_subcommands().front();
    err << "usage error: " << e.what() << '\n' << failed->help();
    return kExitUsageError;
  }

  if (*topics_cmd) return cmd_topics_train(topics, out, err);
  if (*channel_cmd) return cmd_channel(channel, out, err);
  if (*adapt_cmd) return cmd_adapt(adapt, out, err);
  if (*ppl_cmd) {
    if (!thr_text.empty()) {
      ppl.thresholds.clear();
      for (const auto& t : thr_text) {
        if (t == "inf") continue;  // the unconstrained row is always printed
        try {
          std::size_t used = 0;
          const auto v = std::stoull(t, &used);
          if (used != t.size() || v < 1) throw std::invalid_argument(t);
          ppl.thresholds.push_back(v);
        } catch (const std::exception&) {
          err << "usage error: bad --thr value '" << t << "'\n";
          return kExitUsageError;
        }
      }
    }
    return cmd_ppl(ppl, out, err);
  }
  if (*synth_cmd) {
    if (*seed_opt) synth.seed = seed;
    return cmd_synth(synth, out, err);
  }
  return kExitUsageError;
}

}  // namespace cnadapt::cli
