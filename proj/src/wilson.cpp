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

#include "cyclebreak/wilson.hpp"

#include <stdexcept>

#include "cyclebreak/random_walk.hpp"

namespace cyclebreak {

OrientedForest wilson_forest(const Network& net, std::span<const VertexId> roots, std::span<const VertexId> order,
                             Rng& rng, const WilsonOptions& options) {
  const std::size_t n = net.vertex_count();
  if (roots.empty()) throw std::invalid_argument("Wilson's algorithm needs at least one root");
  OrientedForest forest(n);
  std::vector<char> in_tree(n, 0);
  for (VertexId r : roots) {
    net.check_vertex(r);
    in_tree[r] = 1;
  }

  std::vector<char> listed(n, 0);
  std::vector<VertexId> sequence;
  sequence.reserve(n);
  for (VertexId v : order) {
    net.check_vertex(v);
    if (!listed[v]) {
      listed[v] = 1;
      sequence.push_back(v);
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!listed[v]) sequence.push_back(v);

  std::size_t processed = 0;
  for (VertexId v : sequence) {
    if (processed++ >= options.stop_after) break;
    if (in_tree[v]) continue;
    Path branch = loop_erase(net, walk_until_hit(net, v, in_tree, rng, options.max_steps));
    for (const auto& e : branch.edges) {
      forest.set_out_edge(net.tail(e), e);
      in_tree[net.tail(e)] = 1;
    }
  }
  return forest;
}

OrientedForest wilson_rooted(const Network& net, VertexId root, std::span<const VertexId> order, Rng& rng,
                             const WilsonOptions& options) {
  const VertexId roots[] = {root};
  return wilson_forest(net, roots, order, rng, options);
}

OrientedForest sample_oust(const WiredContraction& contraction, std::span<const VertexId> order, Rng& rng,
                           const WilsonOptions& options) {
  return wilson_rooted(contraction.network, contraction.boundary_vertex(), order, rng, options);
}

WindowSample sample_owusf_window(const NetworkSource& source, int depth, Rng& rng, const WilsonOptions& options) {
  if (depth < 1) throw std::invalid_argument("window depth must be at least 1");
  WindowSample sample{truncate(source, depth), {}};
  sample.forest = sample_oust(sample.window, {}, rng, options);
  return sample;
}

std::vector<KeptArc> kept_arcs(const WiredContraction& contraction, const OrientedForest& forest) {
  const Network& net = contraction.network;
  std::vector<KeptArc> arcs;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    const auto& e = forest.out_edge(v);
    if (contraction.is_boundary(v) || !e) continue;
    VertexId w = net.head(*e);
    std::optional<SourceVertex> head;
    if (!contraction.is_boundary(w)) head = contraction.original_vertex[w];
    arcs.push_back({contraction.original_vertex[v], contraction.original_edge[e->edge], head});
  }
  return arcs;
}

}  // namespace cyclebreak
