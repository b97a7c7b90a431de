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

#include "cyclebreak/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <string>

namespace cyclebreak {

double chi_square_survival(double statistic, std::size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(static_cast<double>(degrees_of_freedom));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("observed and expected must be nonempty and of equal length");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  const double mass = std::accumulate(expected.begin(), expected.end(), 0.0);
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected[i] / mass;
    if (e < 5.0)
      throw LowExpectedCount("expected count " + std::to_string(e) + " below 5 in cell " + std::to_string(i));
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
  }
  r.degrees_of_freedom = observed.size() - 1;
  r.p_value = chi_square_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second) {
  if (first.size() != second.size()) throw std::invalid_argument("samples must have equal category counts");
  const double n1 = static_cast<double>(std::accumulate(first.begin(), first.end(), std::uint64_t{0}));
  const double n2 = static_cast<double>(std::accumulate(second.begin(), second.end(), std::uint64_t{0}));
  const double n = n1 + n2;
  ChiSquareResult r;
  std::size_t used = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double col = static_cast<double>(first[i] + second[i]);
    if (col == 0.0) continue;
    ++used;
    const double e1 = n1 * col / n;
    const double e2 = n2 * col / n;
    if (e1 < 5.0 || e2 < 5.0)
      throw LowExpectedCount("expected count below 5 in category " + std::to_string(i));
    const double d1 = static_cast<double>(first[i]) - e1;
    const double d2 = static_cast<double>(second[i]) - e2;
    r.statistic += d1 * d1 / e1 + d2 * d2 / e2;
  }
  r.degrees_of_freedom = used > 0 ? used - 1 : 0;
  r.p_value = chi_square_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

Proportion proportion(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {};
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

double total_variation(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second) {
  if (first.size() != second.size()) throw std::invalid_argument("distributions must have equal support");
  const double n1 = static_cast<double>(std::accumulate(first.begin(), first.end(), std::uint64_t{0}));
  const double n2 = static_cast<double>(std::accumulate(second.begin(), second.end(), std::uint64_t{0}));
  double l1 = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i)
    l1 += std::abs(static_cast<double>(first[i]) / n1 - static_cast<double>(second[i]) / n2);
  return 0.5 * l1;
}

}  // namespace cyclebreak
