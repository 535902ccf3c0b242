// Copyright 2026 The lasertpl Authors
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

#ifndef LASERTPL_NUMBERS_HPP
#define LASERTPL_NUMBERS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace lasertpl {

/// Formats a coordinate for SVG output: rounded to 6 decimals, trailing
/// zeros and a trailing dot removed, negative zero printed as "0".
std::string formatNumber(double value);

/// Shortest decimal representation that parses back to the same double.
std::string formatExact(double value);

/// Parses a complete string as a double (SVG/CSS number syntax). Returns
/// nullopt if anything other than a number is present.
std::optional<double> parseDouble(std::string_view text);

// Scans an SVG number at `text[pos]`. On success advances `pos` and returns
// the value. Accepts sign, leading dot, and exponents.
std::optional<double> scanNumber(std::string_view text, std::size_t& pos);

inline bool nearlyEqual(double a, double b, double tolerance) {
    return std::fabs(a - b) <= tolerance;
}

} // namespace lasertpl

#endif // LASERTPL_NUMBERS_HPP
