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
#include <deque>
#include <set>
#include <vector>

#include "cyclebreak/generators.hpp"
#include "cyclebreak/stats.hpp"

using namespace cyclebreak;

namespace {

OffspringDistribution law(std::vector<Rational> p) { return OffspringDistribution(std::move(p)); }

// Visits up to `limit` vertices breadth first and checks that every edge is
// reported identically from both sides.
void check_symmetric(const NetworkSource& s, std::size_t limit) {
  std::set<SourceVertex> seen{s.root()};
  std::deque<SourceVertex> queue{s.root()};
  while (!queue.empty() && seen.size() < limit) {
    const SourceVertex v = queue.front();
    queue.pop_front();
    for (const auto& e : s.neighbors(v)) {
      const auto back = s.neighbors(e.other);
      int matches = 0;
      for (const auto& b : back) matches += b.key == e.key && b.other == v && b.c == e.c;
      CHECK(matches == 1);
      if (seen.insert(e.other).second) queue.push_back(e.other);
    }
  }
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("offspring laws are validated") {
  CHECK_THROWS_AS(law({Rational(1, 2), Rational(1, 3)}), GeneratorError);
  CHECK_THROWS_AS(law({Rational(-1, 2), Rational(1, 2), Rational(1)}), GeneratorError);
  CHECK_THROWS_AS(law({}), GeneratorError);
  const auto d = law({Rational(1, 4), Rational(0), Rational(3, 4), Rational(0)});
  CHECK(d.max_offspring() == 2);
  CHECK(d.mean() == Rational(3, 2));
  CHECK(d.sample(0.0) == 0);
  CHECK(d.sample(0.2499) == 0);
  CHECK(d.sample(0.25) == 2);
  CHECK(d.sample(0.9999) == 2);
}

TEST_CASE("subcritical and critical laws are rejected") {
  try {
    gw_source(law({Rational(1, 2), Rational(1, 2)}), 1, 5);
    FAIL("accepted a law with mean 1/2");
  } catch (const GeneratorError& e) {
    CHECK(e.code() == GeneratorError::Code::kNotSupercritical);
  }
  CHECK_THROWS_AS(gw_source(law({Rational(1, 2), Rational(0), Rational(1, 2)}), 1, 5), GeneratorError);
}

TEST_CASE("the binary tree never needs a redraw") {
  const auto d = law({Rational(0), Rational(0), Rational(1)});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gw_source(d, seed, 12);
    CHECK(s->attempts() == 1);
    CHECK(s->neighbors(0).size() == 2);
  }
  const auto s = gw_source(d, 3, 12);
  // Vertex 1 is a child of the root: parent plus two children.
  CHECK(s->neighbors(1).size() == 3);
  check_symmetric(*s, 200);
}

TEST_CASE("survival probability of a lazy tree") {
  // p0 = 1/4, p2 = 3/4: extinction q = 1/4 + 3q^2/4 gives q = 1/3.
  const auto d = law({Rational(1, 4), Rational(0), Rational(3, 4)});
  auto count = [&](std::uint64_t h, std::uint32_t) {
    return d.sample(static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53);
  };
  const int trials = 10'000;
  std::uint64_t survived = 0;
  for (int i = 0; i < trials; ++i) survived += LazyTree(count, derive_seed(99, static_cast<std::uint64_t>(i))).reaches_depth(50);
  const auto p = proportion(survived, trials);
  CHECK(std::abs(p.estimate - 2.0 / 3.0) < 3 * p.standard_error);
}

TEST_CASE("conditioned trees reach the survival depth") {
  const auto d = law({Rational(1, 4), Rational(0), Rational(3, 4)});
  std::size_t redraws = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = gw_source(d, seed, 10);
    CHECK(s->tree().reaches_depth(10));
    redraws += s->attempts() - 1;
    check_symmetric(*s, 100);
  }
  CHECK(redraws > 0);
}

TEST_CASE("galton-watson sources are reproducible") {
  const auto d = law({Rational(1, 4), Rational(0), Rational(3, 4)});
  const auto a = gw_source(d, 7, 8);
  const auto b = gw_source(d, 7, 8);
  CHECK(a->tree_seed() == b->tree_seed());
  for (SourceVertex v = 0; v < 30; ++v) {
    const auto x = a->neighbors(v);
    const auto y = b->neighbors(v);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(x[i].key == y[i].key);
      CHECK(x[i].other == y[i].other);
    }
    if (x.empty()) break;
  }
  bool differs = false;
  for (std::uint64_t seed = 8; seed < 20 && !differs; ++seed) differs = gw_source(d, seed, 8)->tree_seed() != a->tree_seed();
  CHECK(differs);
}

TEST_CASE("augmented trees join two roots") {
  const auto d = law({Rational(0), Rational(0), Rational(1)});
  const auto s = augmented_gw_source(d, 5, 6);
  const auto root = s->neighbors(0);
  CHECK(root.size() == 3);
  int joins = 0;
  for (const auto& e : root) joins += e.other == AugmentedGaltonWatsonSource::kSecondTree;
  CHECK(joins == 1);
  CHECK(s->neighbors(AugmentedGaltonWatsonSource::kSecondTree).size() == 3);
  check_symmetric(*s, 300);
}

TEST_CASE("regular trees") {
  const auto s = regular_tree(3);
  CHECK(s->neighbors(0).size() == 3);
  for (const auto& e : s->neighbors(0)) CHECK(s->neighbors(e.other).size() == 3);
  check_symmetric(*s, 200);
  CHECK(truncate(*s, 3).kept_vertices().size() == 1 + 3 + 6 + 12);
}

TEST_CASE("lattices") {
  for (int d = 1; d <= 3; ++d) {
    const auto s = lattice_source(d);
    CHECK(s->recurrent() == (d <= 2));
    CHECK(s->neighbors(s->root()).size() == static_cast<std::size_t>(2 * d));
    std::vector<long> x(static_cast<std::size_t>(d), -3);
    x[0] = 17;
    CHECK(s->decode(s->encode(x)) == x);
    check_symmetric(*s, 100);
  }
  CHECK(truncate(*lattice_source(2), 2).kept_vertices().size() == 13);
}

TEST_CASE("finite boxes") {
  const auto b2 = zd_box(2, 3);
  CHECK(b2.vertex_count() == 9);
  CHECK(b2.edge_count() == 12);
  const auto b3 = zd_box(3, 2);
  CHECK(b3.vertex_count() == 8);
  CHECK(b3.edge_count() == 12);
  CHECK(zd_box(1, 5).edge_count() == 4);
}

TEST_CASE("the tree with hanging paths") {
  const auto s = example52_source();
  CHECK(Example52Source::path_conductance(1) == Rational(1, 4));
  CHECK(Example52Source::path_conductance(2) == Rational(1, 8));
  Rational c_o(0);
  for (const auto& e : s->neighbors(0)) c_o += e.c;
  CHECK(c_o == Rational(13, 4));
  const SourceVertex o1 = Example52Source::path_vertex(0, 1);
  Rational c_o1(0);
  for (const auto& e : s->neighbors(o1)) c_o1 += e.c;
  CHECK(c_o1 == Rational(3, 8));
  CHECK(s->neighbors(0).size() == 4);
  check_symmetric(*s, 400);

  const auto quarter = example52_source(Rational(1, 4));
  Rational c(0);
  for (const auto& e : quarter->neighbors(0)) c += e.c;
  CHECK(c == 1);
}

TEST_CASE("root law") {
  CHECK(example52_root_probability(0) == Rational(4, 7));
  CHECK(example52_root_probability(Example52Source::path_vertex(0, 1)) == Rational(3, 14));
  CHECK(example52_root_probability(Example52Source::path_vertex(0, 3)) == Rational(3, 56));
  CHECK(example52_root_probability(Example52Source::tree_vertex(1)) == 0);
  Rational total(0);
  for (std::uint64_t n = 0; n < 40; ++n) total += example52_root_probability(Example52Source::path_vertex(0, n));
  CHECK(std::abs(to_double(total) - 1.0) < 1e-9);

  Rng rng(12);
  const std::uint64_t n = 100'000;
  std::vector<std::uint64_t> counts(4, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto v = example52_root(rng);
    REQUIRE(Example52Source::tree_part(v) == 0);
    ++counts[std::min<std::uint64_t>(Example52Source::path_index(v), 3)];
  }
  const std::vector<double> expected = {4.0 / 7, 3.0 / 14, 3.0 / 28, 3.0 / 28};
  CHECK(chi_square_gof(counts, expected).p_value > 1e-4);
}

TEST_CASE("exact class probabilities") {
  const auto exact = example52_exact_class_probabilities(*example52_source(), 4);
  // From o: 4/7 * (1/4)/(13/4).
  CHECK(exact.at("o>o1") == Rational(4, 91));
  CHECK(exact.at("o1>o") == Rational(3, 14) * Rational(2, 3));
  CHECK(exact.at("o>o'") == Rational(4, 7) * Rational(12, 13));

  const auto quarter = example52_exact_class_probabilities(*example52_source(Rational(1, 4)), 4);
  CHECK(quarter.at("o>o1") == Rational(1, 7));
  CHECK(quarter.at("o1>o") == Rational(1, 7));
  CHECK(quarter.at("o1>o2") == Rational(1, 14));
  CHECK(quarter.at("o2>o1") == Rational(1, 14));
}

TEST_CASE("a walk step from the origin alone is not reversible") {
  const auto s = example52_source(Rational(1, 4));
  Rng rng(13);
  const auto report = reversibility_check(*s, [](Rng&) { return SourceVertex{0}; }, example52_classifier(), 20'000, rng);
  const auto* o_o1 = report.find("o>o1");
  REQUIRE(o_o1 != nullptr);
  CHECK(o_o1->swapped_frequency == 0.0);
  CHECK(report.max_abs_z_swap > 10.0);
}

TEST_CASE("the quarter-conductance network is reversible under the root law") {
  const auto s = example52_source(Rational(1, 4));
  Rng rng(14);
  const auto report = reversibility_check(*s, example52_root, example52_classifier(), 200'000, rng);
  CHECK(report.samples == 200'000);
  // Several classes are compared, so allow a little more than three SE.
  CHECK(report.max_abs_z_swap < 4.0);
  const auto* o_o1 = report.find("o>o1");
  REQUIRE(o_o1 != nullptr);
  CHECK(std::abs(o_o1->frequency - 1.0 / 7) < 4 * o_o1->standard_error);
}

}  // TEST_SUITE
