// Copyright 2026 The cyclebreak Authors
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

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclebreak {

/// Exact rational number (GMP). Used wherever a result is a certificate
/// rather than an estimate.
using Rational = mpq_class;

class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a decimal ("1.25", "-3", "2.5e-2") or fraction ("7/3") string
/// exactly. Throws RationalParseError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace cyclebreak
