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

#include "cyclebreak/update.hpp"
#include "cyclebreak/wilson.hpp"
#include "support.hpp"

using namespace cyclebreak;

namespace {

// Triangle a, b, c (0, 1, 2) with root r = 3 pendant at c.
// Edges: 0 = a-b, 1 = b-c, 2 = c-a, 3 = c-r.
struct Triangle {
  Network net = make_network(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}, {2, 3, Rational(1)}});
  OrientedForest f{4};

  Triangle() {
    f.set_out_edge(0, OrientedEdge{0, false});  // a -> b
    f.set_out_edge(1, OrientedEdge{1, false});  // b -> c
    f.set_out_edge(2, OrientedEdge{3, false});  // c -> r
  }
};

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("cycle-breaking") {

TEST_CASE("past along a chain and a star") {
  Triangle t;
  CHECK(sorted(past(t.net, t.f, 2)) == std::vector<VertexId>{0, 1, 2});
  CHECK(past(t.net, t.f, 0) == std::vector<VertexId>{0});
  CHECK(in_past(t.net, t.f, 0, 2));
  CHECK_FALSE(in_past(t.net, t.f, 2, 0));

  auto star = make_network(4, {{1, 0, Rational(1)}, {2, 0, Rational(1)}, {3, 0, Rational(1)}});
  OrientedForest s(4);
  for (VertexId leaf = 1; leaf <= 3; ++leaf) s.set_out_edge(leaf, OrientedEdge{leaf - 1, false});
  CHECK(sorted(past(star, s, 0)) == std::vector<VertexId>{0, 1, 2, 3});
  for (VertexId leaf = 1; leaf <= 3; ++leaf) CHECK(past(star, s, leaf) == std::vector<VertexId>{leaf});
  CHECK_THROWS(past(star, s, 9));
}

TEST_CASE("edges already present are no-ops") {
  Triangle t;
  for (OrientedEdge e : {OrientedEdge{0, false}, OrientedEdge{0, true}, OrientedEdge{1, true}}) {
    auto out = update(t.net, t.f, e);
    CHECK(out.kind == UpdateCase::kNoOp);
    CHECK(out.forest == t.f);
    CHECK_FALSE(out.deleted);
    CHECK(out.reversed_path.empty());
  }
  auto looped = make_network(2, {{0, 1, Rational(1)}, {0, 0, Rational(1)}});
  OrientedForest f(2);
  f.set_out_edge(0, OrientedEdge{0, false});
  CHECK(update(looped, f, OrientedEdge{1, false}).kind == UpdateCase::kNoOp);
  CHECK(update(looped, f, OrientedEdge{1, true}).forest == f);
}

TEST_CASE("past case on the triangle") {
  Triangle t;
  // e = c -> a; a is in the past of c via a -> b -> c.
  auto out = update(t.net, t.f, OrientedEdge{2, false});
  CHECK(out.kind == UpdateCase::kPast);
  REQUIRE(out.deleted);
  CHECK(*out.deleted == OrientedEdge{1, false});
  OrientedForest expected(4);
  expected.set_out_edge(1, OrientedEdge{0, true});   // b -> a
  expected.set_out_edge(0, OrientedEdge{2, true});   // a -> c
  expected.set_out_edge(2, OrientedEdge{3, false});  // c -> r
  CHECK(out.forest == expected);
  CHECK(out.forest == testing::cycle_breaking_oracle(t.net, t.f, OrientedEdge{2, false}));
  CHECK(out.reversed_path.size() == 2);
}

TEST_CASE("non-past case on the triangle") {
  Triangle t;
  // e = a -> c; past(a) = {a}.
  auto out = update(t.net, t.f, OrientedEdge{2, true});
  CHECK(out.kind == UpdateCase::kNonPast);
  REQUIRE(out.deleted);
  CHECK(*out.deleted == OrientedEdge{0, false});
  OrientedForest expected(4);
  expected.set_out_edge(0, OrientedEdge{2, true});   // a -> c
  expected.set_out_edge(1, OrientedEdge{1, false});  // b -> c
  expected.set_out_edge(2, OrientedEdge{3, false});  // c -> r
  CHECK(out.forest == expected);
  CHECK(out.reversed_path.empty());
}

TEST_CASE("updates from a root are rejected") {
  // Adding an edge out of the root r would need r to have an out-edge.
  auto net = make_network(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}, {2, 3, Rational(1)}, {3, 0, Rational(1)}});
  OrientedForest f(4);
  f.set_out_edge(0, OrientedEdge{0, false});
  f.set_out_edge(1, OrientedEdge{1, false});
  f.set_out_edge(2, OrientedEdge{3, false});
  CHECK_THROWS_AS(update(net, f, OrientedEdge{4, false}), RootTailError);
  Rng rng(1);
  CHECK_THROWS_AS(dynamics_step(net, f, 3, rng), RootTailError);
}

TEST_CASE("two parallel edges to the root") {
  // v = 0, boundary = 1, edges c1 = 1, c2 = 3.
  auto net = make_network(2, {{0, 1, Rational(1)}, {0, 1, Rational(3)}});
  OrientedForest f(2);
  f.set_out_edge(0, OrientedEdge{0, false});
  Rng rng(2);
  const int n = 100'000;
  int stay = 0;
  for (int i = 0; i < n; ++i) stay += dynamics_step(net, f, 0, rng) == f;
  CHECK(std::abs(stay / double(n) - 0.25) < 3 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("steps whose edges are all present are no-ops") {
  auto net = make_network(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}, {1, 1, Rational(1)}});
  OrientedForest f(3);
  f.set_out_edge(0, OrientedEdge{0, false});
  f.set_out_edge(1, OrientedEdge{1, false});
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto step = dynamics_step_traced(net, f, 1, rng);
    CHECK(step.kind == UpdateCase::kNoOp);
  }
}

TEST_CASE("random updates satisfy every invariant") {
  Rng rng(4);
  int checked = 0, past_cases = 0, non_past = 0, cross = 0;
  while (checked < 20'000) {
    auto net = testing::random_multigraph(rng, 2 + rng.below(8), rng.below(10));
    std::vector<VertexId> roots = {static_cast<VertexId>(rng.below(net.vertex_count()))};
    if (net.vertex_count() > 3 && rng.bernoulli(0.3)) {
      const auto extra = static_cast<VertexId>(rng.below(net.vertex_count()));
      if (extra != roots[0]) roots.push_back(extra);
    }
    const OrientedForest f = wilson_forest(net, roots, {}, rng);
    for (int k = 0; k < 10; ++k) {
      const OrientedEdge e{static_cast<EdgeId>(rng.below(net.edge_count())), rng.bernoulli(0.5)};
      const VertexId v = net.tail(e);
      if (f.is_root(v)) continue;
      ++checked;
      const auto out = update(net, f, e);
      CHECK_FALSE(out.forest.validate(net).has_value());
      CHECK(out.forest.roots() == f.roots());
      CHECK(out.forest == testing::cycle_breaking_oracle(net, f, e));
      if (out.kind == UpdateCase::kNoOp) {
        CHECK(out.forest == f);
        CHECK(out.reversed_path.empty());
        continue;
      }
      // Unoriented identity.
      REQUIRE(out.deleted);
      auto expected = f.unoriented_edges();
      expected.erase(std::find(expected.begin(), expected.end(), out.deleted->edge));
      expected.insert(std::lower_bound(expected.begin(), expected.end(), e.edge), e.edge);
      CHECK(out.forest.unoriented_edges() == expected);
      CHECK(out.reversed_path.empty() == (out.kind == UpdateCase::kNonPast));
      if (out.kind == UpdateCase::kPast) ++past_cases;
      else ++non_past;
      if (!testing::forest_path(net, f.unoriented_edges(), v, net.head(e))) ++cross;
      // Updating at whichever of d, -d leaves v gives back f.
      const OrientedEdge back = net.tail(*out.deleted) == v ? *out.deleted : out.deleted->reversal();
      REQUIRE(net.tail(back) == v);
      CHECK(update(net, out.forest, back).forest == f);
    }
  }
  CHECK(past_cases > 1000);
  CHECK(non_past > 1000);
  CHECK(cross > 100);
}

TEST_CASE("path updates") {
  Triangle t;
  const VertexId single[] = {1};
  auto none = update_along_path(t.net, t.f, single);
  CHECK(none.forest == t.f);
  CHECK(none.edges.empty());

  // Two components: 0 -> 1 rooted at 1, and 2 -> 3 rooted at 3; join via 1-2.
  auto net = make_network(4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}, {0, 2, Rational(1)}});
  OrientedForest f(4);
  f.set_out_edge(0, OrientedEdge{0, false});
  f.set_out_edge(2, OrientedEdge{2, false});
  const VertexId gamma[] = {1, 0};
  auto res = update_along_path(net, f, gamma);
  REQUIRE(res.cases.size() == 1);
  CHECK(res.cases[0] == UpdateCase::kNoOp);
  CHECK(res.forest == f);

  const VertexId across[] = {2, 0};
  auto merged = update_along_path(net, f, across);
  CHECK(merged.cases[0] == UpdateCase::kNonPast);
  CHECK(merged.forest.out_edge(0) == OrientedEdge{3, false});
  CHECK(merged.forest.roots() == std::vector<VertexId>{1, 3});

  const VertexId broken[] = {1, 3};
  CHECK_THROWS_AS(update_along_path(net, f, broken), MissingEdgeError);
}

TEST_CASE("parallel edge choice") {
  auto net = make_network(3, {{0, 1, Rational(1)}, {0, 1, Rational(2)}, {1, 2, Rational(1)}});
  OrientedForest f(3);
  f.set_out_edge(0, OrientedEdge{0, false});
  f.set_out_edge(1, OrientedEdge{2, false});
  const VertexId gamma[] = {1, 0};
  // 0 -> 1 uses edge 0 already; the highest id picks the other parallel edge.
  CHECK(update_along_path(net, f, gamma, EdgeChoice::kLowestId).cases[0] == UpdateCase::kNoOp);
  auto high = update_along_path(net, f, gamma, EdgeChoice::kHighestId);
  CHECK(high.cases[0] == UpdateCase::kNonPast);
  CHECK(high.forest.out_edge(0) == OrientedEdge{1, false});
}

}  // TEST_SUITE
