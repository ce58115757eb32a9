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

#ifndef CNADAPT_TOOLS_MANIFEST_H_
#define CNADAPT_TOOLS_MANIFEST_H_

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cnadapt::cli {

// Record of one CLI run, written next to its outputs.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  double wall_time_seconds = 0.0;

  nlohmann::ordered_json to_json() const;
  void write(const std::string& path) const;
};

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string tool_version();

}  // namespace cnadapt::cli

#endif  // CNADAPT_TOOLS_MANIFEST_H_
