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

#ifndef CNADAPT_NUMBER_FORMAT_H_
#define CNADAPT_NUMBER_FORMAT_H_

#include <string>
#include <string_view>

namespace cnadapt {

// Fixed notation with at most `fraction_digits` digits after the point,
// trailing zeros (and a bare point) trimmed: 0.500000000 -> "0.5", 1.0 -> "1".
std::string format_fixed_trimmed(double value, int fraction_digits);

// Shortest of %.<digits>g style output, e.g. 12 significant digits.
std::string format_significant(double value, int digits);

// Strict decimal parse of the whole string. Returns false on any trailing
// garbage, empty input or non-finite result.
bool parse_double(std::string_view text, double& out);

// Value as it survives a CNET posterior round trip (9 fraction digits).
double quantize_posterior(double value);

inline constexpr int kPosteriorDigits = 9;
inline constexpr int kProbabilityDigits = 12;

}  // namespace cnadapt

#endif  // CNADAPT_NUMBER_FORMAT_H_
