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

#include "cnadapt/cnet_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "cnadapt/errors.h"
#include "cnadapt/number_format.h"

namespace cnadapt {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split into tokens; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++number_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      tokens = split_ws(line_);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t number_ = 0;
};

Bin parse_bin(const std::vector<std::string_view>& tokens, std::size_t line,
              Vocabulary& vocab) {
  std::vector<Cell> cells;
  cells.reserve(tokens.size() - 1);
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    const std::string_view tok = tokens[k];
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 ||
        tok.find(':', colon + 1) != std::string_view::npos) {
      throw ParseError("malformed cell '" + std::string(tok) + "'", line);
    }
    double posterior = 0.0;
    if (!parse_double(tok.substr(colon + 1), posterior)) {
      throw ParseError("malformed posterior in '" + std::string(tok) + "'",
                       line);
    }
    if (posterior < 0.0 || posterior > 1.0) {
      throw ValidationError("line " + std::to_string(line) + ": posterior " +
                            std::string(tok.substr(colon + 1)) +
                            " outside [0, 1]");
    }
    cells.push_back({vocab.intern(tok.substr(0, colon)), posterior});
  }
  try {
    return Bin::FromCells(std::move(cells));
  } catch (const ValidationError& e) {
    throw ValidationError("line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

Conversation parse_conversation(std::istream& in, Vocabulary& vocab) {
  LineReader reader(in);
  std::vector<std::string_view> tokens;

  if (!reader.next(tokens)) throw ParseError("empty input", reader.number());
  if (tokens[0] != "CONV" || tokens.size() != 2) {
    throw ParseError("expected 'CONV <conversation-id>'", reader.number());
  }
  std::string conv_id(tokens[1]);

  std::vector<ConfusionNetwork> nets;
  while (reader.next(tokens)) {
    if (tokens[0] != "NET") {
      throw ParseError("expected 'NET <utterance-id> <bin-count>'",
                       reader.number());
    }
    if (tokens.size() != 3) {
      throw ParseError("expected 'NET <utterance-id> <bin-count>'",
                       reader.number());
    }
    std::size_t count = 0;
    const auto sv = tokens[2];
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), count);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) {
      throw ParseError("malformed bin count '" + std::string(sv) + "'",
                       reader.number());
    }
    if (count == 0) {
      throw ValidationError("line " + std::to_string(reader.number()) +
                            ": utterance '" + std::string(tokens[1]) +
                            "' has no bins");
    }
    ConfusionNetwork net{std::string(tokens[1]), {}};
    net.bins.reserve(count);
    for (std::size_t b = 0; b < count; ++b) {
      if (!reader.next(tokens)) {
        throw ParseError("unexpected end of input: utterance '" +
                             net.utterance_id + "' expects " +
                             std::to_string(count) + " bins",
                         reader.number());
      }
      if (tokens[0] != "BIN") {
        throw ParseError("expected 'BIN' line", reader.number());
      }
      net.bins.push_back(parse_bin(tokens, reader.number(), vocab));
    }
    nets.push_back(std::move(net));
  }
  return Conversation(std::move(conv_id), std::move(nets));
}

Conversation parse_conversation_file(const std::string& path,
                                     Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_conversation(in, vocab);
}

void write_conversation(std::ostream& out, const Conversation& conv,
                        const Vocabulary& vocab) {
  out << "CONV " << conv.id() << '\n';
  for (const auto& net : conv.networks()) {
    out << "NET " << net.utterance_id << ' ' << net.bins.size() << '\n';
    for (const Bin& bin : net.bins) {
      out << "BIN";
      for (const Cell& c : bin.cells()) {
        out << ' ' << vocab.word(c.word) << ':'
            << format_fixed_trimmed(c.posterior, kPosteriorDigits);
      }
      out << '\n';
    }
  }
}

std::string serialize_conversation(const Conversation& conv,
                                   const Vocabulary& vocab) {
  std::ostringstream out;
  write_conversation(out, conv, vocab);
  return out.str();
}

}  // namespace cnadapt
