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

// Independent reference implementations used as test oracles. These favor
// obviousness over speed and share no code with the library algorithms.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "cyclebreak/forest.hpp"
#include "cyclebreak/network.hpp"
#include "cyclebreak/rational.hpp"
#include "cyclebreak/rng.hpp"

namespace cyclebreak::testing {

/// Spanning trees by brute force over all (n-1)-subsets of edges, with
/// their exact weights.
inline std::map<std::vector<EdgeId>, Rational> brute_force_trees(const Network& net) {
  const std::size_t n = net.vertex_count();
  const std::size_t m = net.edge_count();
  std::map<std::vector<EdgeId>, Rational> out;
  if (n == 1) {
    out[{}] = 1;
    return out;
  }
  std::vector<char> pick(m, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(m, n - 1)), 1);
  if (m < n - 1) return out;
  // prev_permutation walks every selection mask exactly once.
  do {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    bool acyclic = true;
    std::vector<EdgeId> edges;
    Rational w(1);
    for (EdgeId e = 0; e < m && acyclic; ++e) {
      if (!pick[e]) continue;
      const auto a = find(net.first_endpoint(e));
      const auto b = find(net.second_endpoint(e));
      if (a == b) acyclic = false;
      parent[a] = b;
      edges.push_back(e);
      w *= net.conductance(e);
    }
    if (acyclic) out[edges] = w;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Loop erasure of a vertex sequence by the last-visit recursion:
/// t_0 = last visit to g_0, t_{i+1} = last visit to g_{t_i + 1}.
inline std::vector<VertexId> last_visit_erasure(const std::vector<VertexId>& g) {
  std::vector<VertexId> out;
  if (g.empty()) return out;
  auto last_visit = [&](VertexId v) {
    std::size_t t = 0;
    for (std::size_t s = 0; s < g.size(); ++s)
      if (g[s] == v) t = s;
    return t;
  };
  std::size_t t = last_visit(g[0]);
  out.push_back(g[0]);
  while (t + 1 < g.size()) {
    const VertexId next = g[t + 1];
    out.push_back(next);
    t = last_visit(next);
  }
  return out;
}

/// Orients each component of an unoriented forest toward the unique vertex
/// of `roots` it contains.
inline OrientedForest orient_toward_roots(const Network& net, const std::vector<EdgeId>& edges,
                                          const std::vector<VertexId>& roots) {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(net.vertex_count());
  for (EdgeId e : edges) {
    adj[net.first_endpoint(e)].push_back({net.second_endpoint(e), e});
    adj[net.second_endpoint(e)].push_back({net.first_endpoint(e), e});
  }
  OrientedForest f(net.vertex_count());
  std::vector<char> seen(net.vertex_count(), 0);
  for (VertexId r : roots) {
    std::queue<VertexId> q;
    q.push(r);
    seen[r] = 1;
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop();
      for (auto [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        f.set_out_edge(y, OrientedEdge{e, net.first_endpoint(e) != y});
        q.push(y);
      }
    }
  }
  return f;
}

/// Unoriented tree path between a and b in a forest, as edge ids from a.
inline std::optional<std::vector<EdgeId>> forest_path(const Network& net, const std::vector<EdgeId>& edges,
                                                      VertexId a, VertexId b) {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(net.vertex_count());
  for (EdgeId e : edges) {
    adj[net.first_endpoint(e)].push_back({net.second_endpoint(e), e});
    adj[net.second_endpoint(e)].push_back({net.first_endpoint(e), e});
  }
  std::vector<std::optional<std::pair<VertexId, EdgeId>>> via(net.vertex_count());
  std::vector<char> seen(net.vertex_count(), 0);
  std::queue<VertexId> q;
  q.push(a);
  seen[a] = 1;
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (auto [y, e] : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      via[y] = {x, e};
      q.push(y);
    }
  }
  if (!seen[b]) return std::nullopt;
  std::vector<EdgeId> path;
  for (VertexId x = b; x != a; x = via[x]->first) path.push_back(via[x]->second);
  std::reverse(path.begin(), path.end());
  return path;
}

/// The update rule as a cycle-breaking step: add e, delete the edge of the
/// (possibly wired) cycle next to tail(e), and keep each component rooted
/// where it was.
inline OrientedForest cycle_breaking_oracle(const Network& net, const OrientedForest& f, OrientedEdge e) {
  const auto edges = f.unoriented_edges();
  if (net.is_self_loop(e.edge) || std::binary_search(edges.begin(), edges.end(), e.edge)) return f;
  const VertexId t = net.tail(e);
  const VertexId h = net.head(e);
  EdgeId d;
  if (auto path = forest_path(net, edges, t, h)) {
    d = path->front();
  } else {
    d = f.out_edge(t)->edge;
  }
  std::vector<EdgeId> next;
  for (EdgeId x : edges)
    if (x != d) next.push_back(x);
  next.push_back(e.edge);
  return orient_toward_roots(net, next, f.roots());
}

/// A random connected multigraph with self-loops and parallel edges, and
/// conductances drawn from a small set of rationals.
inline Network random_multigraph(Rng& rng, std::size_t n, std::size_t extra_edges) {
  static const char* kValues[] = {"1", "1/2", "2", "3/4", "5/3", "1/7", "3"};
  Network::Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add_vertex();
  auto c = [&] { return parse_rational(kValues[rng.below(std::size(kValues))]); };
  for (VertexId v = 1; v < n; ++v) b.add_edge(static_cast<VertexId>(rng.below(v)), v, c());
  for (std::size_t k = 0; k < extra_edges; ++k)
    b.add_edge(static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n)), c());
  return std::move(b).build();
}

}  // namespace cyclebreak::testing
