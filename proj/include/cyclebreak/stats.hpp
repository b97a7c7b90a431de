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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cyclebreak {

class LowExpectedCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit against `expected` probabilities, k-1 degrees
/// of freedom. Every expected count must be at least 5.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> expected);

/// Two-sample homogeneity test on a 2 x k contingency table. Categories
/// empty in both samples are dropped; every remaining expected count must
/// be at least 5.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, std::size_t degrees_of_freedom);

/// Binomial proportion with its standard error.
struct Proportion {
  double estimate = 0.0;
  double standard_error = 0.0;
};
Proportion proportion(std::uint64_t successes, std::uint64_t trials);

/// Half the L1 distance between two empirical distributions.
double total_variation(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second);

}  // namespace cyclebreak
