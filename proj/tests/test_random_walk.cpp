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

#include <doctest.h>

#include <cmath>

#include "cyclebreak/random_walk.hpp"
#include "cyclebreak/stats.hpp"
#include "support.hpp"

using namespace cyclebreak;

namespace {

// Builds a path in `net` visiting `vertices`, taking the first edge between
// consecutive vertices.
Path path_through(const Network& net, const std::vector<VertexId>& vertices) {
  Path p{vertices.front(), {}};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const EdgeId e = net.edges_between(vertices[i - 1], vertices[i]).front();
    p.edges.push_back({e, net.first_endpoint(e) != vertices[i - 1]});
  }
  return p;
}

}  // namespace

TEST_SUITE("random-walk") {

TEST_CASE("step law on two edges") {
  auto net = make_network(3, {{0, 1, Rational(1)}, {0, 2, Rational(3)}});
  Rng rng(1);
  const int n = 100'000;
  int first = 0;
  for (int i = 0; i < n; ++i) first += walk_step(net, 0, rng).edge == 0;
  const double p = 0.25;
  CHECK(std::abs(first / double(n) - p) < 3 * std::sqrt(p * (1 - p) / n));

  for (int i = 0; i < 100; ++i) CHECK(walk_step(net, 1, rng).edge == 0);
}

TEST_CASE("step frequencies on a five-edge star pass chi-square") {
  auto net = make_network(6, {{0, 1, Rational(1)},
                              {0, 2, Rational(2)},
                              {0, 3, Rational(1, 2)},
                              {0, 4, Rational(5, 2)},
                              {0, 5, Rational(4)}});
  Rng rng(2);
  const std::uint64_t n = 100'000;
  std::vector<std::uint64_t> counts(5, 0);
  for (std::uint64_t i = 0; i < n; ++i) ++counts[walk_step(net, 0, rng).edge];
  std::vector<double> expected;
  for (EdgeId e = 0; e < 5; ++e) expected.push_back(n * to_double(Rational(net.conductance(e) / net.exact_conductance_at(0))));
  CHECK(chi_square_gof(counts, expected).p_value > 1e-3);
}

TEST_CASE("equal conductances give a uniform step") {
  auto net = make_network(4, {{0, 1, Rational(2)}, {0, 2, Rational(2)}, {0, 3, Rational(2)}});
  Rng rng(3);
  std::vector<std::uint64_t> counts(3, 0);
  for (int i = 0; i < 30'000; ++i) ++counts[walk_step(net, 0, rng).edge];
  const std::vector<double> expected(3, 10'000.0);
  CHECK(chi_square_gof(counts, expected).p_value > 1e-3);
}

TEST_CASE("walk from a target is empty") {
  auto net = make_network(2, {{0, 1, Rational(1)}});
  Rng rng(4);
  const VertexId targets[] = {0};
  auto p = walk_until_hit(net, 0, std::span<const VertexId>(targets), rng, 10);
  CHECK(p.length() == 0);
  CHECK(p.start == 0);
}

TEST_CASE("self-loop delays the first hit") {
  // v = 0 with a self-loop of conductance s and an edge of conductance a to w.
  const Rational a(3, 2), s(1, 2);
  auto net = make_network(2, {{0, 1, a}, {0, 0, s}});
  Rng rng(5);
  const VertexId targets[] = {1};
  const int n = 100'000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    auto p = walk_until_hit(net, 0, std::span<const VertexId>(targets), rng, 1'000);
    CHECK(p.end(net) == 1);
    CHECK(p.is_chained(net));
    ones += p.length() == 1;
  }
  const double q = to_double(Rational(a / (a + 2 * s)));
  CHECK(std::abs(ones / double(n) - q) < 3 * std::sqrt(q * (1 - q) / n));
}

TEST_CASE("two-vertex walks have odd length without self-loops") {
  auto net = make_network(2, {{0, 1, Rational(1)}, {0, 1, Rational(2)}});
  Rng rng(6);
  const VertexId targets[] = {1};
  for (int i = 0; i < 1000; ++i) {
    auto p = walk_until_hit(net, 0, std::span<const VertexId>(targets), rng, 100);
    CHECK(p.length() % 2 == 1);
  }
}

TEST_CASE("mean hitting time on a three-vertex path") {
  // v - w - t with c(vw) = a, c(wt) = b: h(v) = 2 (a + b) / b.
  const Rational a(2), b(1, 2);
  auto net = make_network(3, {{0, 1, a}, {1, 2, b}});
  const double h = to_double(Rational(2 * (a + b) / b));
  Rng rng(7);
  const VertexId targets[] = {2};
  const int n = 50'000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double len = static_cast<double>(walk_until_hit(net, 0, std::span<const VertexId>(targets), rng, 100'000).length());
    sum += len;
    sum_sq += len * len;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean - h) < 3 * se);
}

TEST_CASE("step budget is enforced") {
  auto net = make_network(3, {{0, 1, Rational(1000)}, {1, 2, Rational(1, 1000)}});
  Rng rng(8);
  const VertexId targets[] = {2};
  CHECK_THROWS_AS(walk_until_hit(net, 0, std::span<const VertexId>(targets), rng, 3), StepBudgetExceeded);
}

TEST_CASE("loop erasure of hand-worked sequences") {
  // a, b, c, d as 0..3 on K4.
  auto net = make_network(4, {{0, 1, Rational(1)},
                              {0, 2, Rational(1)},
                              {0, 3, Rational(1)},
                              {1, 2, Rational(1)},
                              {1, 3, Rational(1)},
                              {2, 3, Rational(1)}});
  CHECK(loop_erase(net, path_through(net, {0, 1, 2})).vertices(net) == std::vector<VertexId>{0, 1, 2});
  CHECK(loop_erase(net, path_through(net, {0, 1, 0, 2})).vertices(net) == std::vector<VertexId>{0, 2});
  CHECK(loop_erase(net, path_through(net, {0, 1, 2, 0, 2, 3})).vertices(net) == std::vector<VertexId>{0, 2, 3});
}

TEST_CASE("loop erasure matches the last-visit recursion") {
  Rng rng(9);
  for (int trial = 0; trial < 2000; ++trial) {
    auto net = testing::random_multigraph(rng, 2 + rng.below(6), rng.below(8));
    const VertexId start = static_cast<VertexId>(rng.below(net.vertex_count()));
    Path p{start, {}};
    const std::size_t steps = rng.below(40);
    for (std::size_t s = 0; s < steps; ++s) p.edges.push_back(walk_step(net, p.end(net), rng));
    const Path erased = loop_erase(net, p);
    CHECK(erased.is_chained(net));
    CHECK(erased.vertices(net) == testing::last_visit_erasure(p.vertices(net)));
    CHECK(loop_erase(net, erased).edges == erased.edges);

    // Each surviving edge is the one used when leaving the last visit.
    const auto seq = p.vertices(net);
    const auto kept = erased.vertices(net);
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
      std::size_t last = 0;
      for (std::size_t t = 0; t < seq.size(); ++t)
        if (seq[t] == kept[i]) last = t;
      CHECK(erased.edges[i] == p.edges[last]);
    }
  }
}

}  // TEST_SUITE
