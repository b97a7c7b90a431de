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

#include "cyclebreak/corpus.hpp"

namespace cyclebreak {

namespace {

struct Spec {
  const char* id;
  std::size_t vertices;
  std::vector<std::tuple<VertexId, VertexId, const char*>> edges;
  std::vector<VertexId> keep;
};

CorpusFixture make_fixture(const Spec& spec) {
  std::vector<EdgeSpec> edges;
  for (const auto& [u, v, c] : spec.edges) edges.push_back({u, v, parse_rational(c)});
  CorpusFixture f{spec.id, make_network(spec.vertices, edges), spec.keep, {}};
  f.contraction = wired_contract(f.base, f.keep);
  return f;
}

}  // namespace

std::vector<CorpusFixture> builtin_corpus() {
  // Vertices past the kept ones lie outside and collapse onto the boundary.
  const std::vector<Spec> specs = {
      {"path", 3, {{0, 1, "1/2"}, {1, 2, "3"}}, {0, 1}},
      {"triangle", 3, {{0, 1, "1"}, {1, 2, "2/3"}, {0, 2, "5/2"}}, {0, 1}},
      {"parallel", 4, {{0, 1, "1"}, {0, 1, "1/3"}, {0, 2, "2"}, {1, 3, "7/5"}}, {0, 1}},
      {"self-loop", 4, {{0, 0, "1/2"}, {0, 1, "3/4"}, {1, 2, "1"}, {2, 3, "2"}, {0, 3, "1/3"}}, {0, 1, 2}},
      {"outside-edge", 5, {{0, 1, "2"}, {1, 2, "1/5"}, {2, 3, "1"}, {3, 4, "9/7"}, {0, 4, "1/2"}}, {0, 1, 2}},
      {"double-exit", 4, {{0, 1, "3/2"}, {0, 2, "1"}, {0, 3, "2/3"}, {1, 3, "1/4"}}, {0, 1}},
      {"k4", 4,
       {{0, 1, "1"}, {0, 2, "1/2"}, {1, 2, "2"}, {0, 3, "3/4"}, {1, 3, "5/3"}, {2, 3, "1/7"}},
       {0, 1, 2}},
      {"star", 6,
       {{0, 1, "1"}, {0, 2, "2"}, {0, 3, "1/2"}, {0, 4, "3"}, {1, 5, "1/3"}, {2, 5, "1"}, {3, 5, "5/4"},
        {4, 5, "2/5"}},
       {0, 1, 2, 3, 4}},
      {"wheel", 5,
       {{0, 1, "1"}, {1, 2, "1/2"}, {2, 3, "3"}, {3, 0, "2/3"}, {0, 4, "1"}, {1, 4, "5/2"}, {2, 4, "1/4"},
        {3, 4, "7/3"}},
       {0, 1, 2, 3}},
      {"cycle-loop", 5,
       {{0, 1, "1"}, {1, 2, "2"}, {2, 3, "1/2"}, {3, 0, "4/3"}, {2, 2, "1/3"}, {3, 4, "1"}, {3, 4, "3/5"}},
       {0, 1, 2, 3}},
      {"mixed", 6,
       {{0, 1, "1"}, {0, 1, "2"}, {2, 2, "5/2"}, {1, 2, "1/3"}, {2, 3, "2"}, {0, 4, "3/4"}, {3, 5, "1"},
        {4, 5, "6"}},
       {0, 1, 2}},
      {"diamond", 5,
       {{0, 1, "1/2"}, {0, 2, "3"}, {1, 3, "1"}, {2, 3, "2/7"}, {1, 2, "4/3"}, {3, 4, "1"}, {0, 4, "5/6"}},
       {0, 1, 2, 3}},
  };
  std::vector<CorpusFixture> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(make_fixture(s));
  return out;
}

Network unit_k4() {
  return make_network(4, {{0, 1, Rational(1)},
                          {0, 2, Rational(1)},
                          {0, 3, Rational(1)},
                          {1, 2, Rational(1)},
                          {1, 3, Rational(1)},
                          {2, 3, Rational(1)}});
}

Network weighted_triangle() {
  return make_network(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}, {2, 0, Rational(3)}});
}

}  // namespace cyclebreak
