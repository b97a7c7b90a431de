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

#include "cyclebreak/forest.hpp"

#include <algorithm>

namespace cyclebreak {

std::vector<VertexId> OrientedForest::roots() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < out_.size(); ++v)
    if (!out_[v]) out.push_back(v);
  return out;
}

std::size_t OrientedForest::edge_count() const {
  return static_cast<std::size_t>(std::count_if(out_.begin(), out_.end(), [](const auto& e) { return e.has_value(); }));
}

bool OrientedForest::contains_edge(const Network& net, EdgeId e) const {
  return contains(net, OrientedEdge{e, false}) || contains(net, OrientedEdge{e, true});
}

std::vector<EdgeId> OrientedForest::unoriented_edges() const {
  std::vector<EdgeId> edges;
  for (const auto& e : out_)
    if (e) edges.push_back(e->edge);
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::optional<std::string> OrientedForest::validate(const Network& net) const {
  if (out_.size() != net.vertex_count())
    return "forest has " + std::to_string(out_.size()) + " vertices, network has " +
           std::to_string(net.vertex_count());
  for (VertexId v = 0; v < out_.size(); ++v) {
    if (!out_[v]) continue;
    if (out_[v]->edge >= net.edge_count()) return "vertex " + std::to_string(v) + " points along an unknown edge";
    if (net.tail(*out_[v]) != v) return "out-edge of vertex " + std::to_string(v) + " does not have it as tail";
  }
  // 0 = unvisited, 1 = on current chain, 2 = known to reach a root.
  std::vector<char> state(out_.size(), 0);
  std::vector<VertexId> chain;
  for (VertexId start = 0; start < out_.size(); ++start) {
    VertexId v = start;
    chain.clear();
    while (state[v] == 0 && out_[v]) {
      state[v] = 1;
      chain.push_back(v);
      v = net.head(*out_[v]);
    }
    if (state[v] == 1) return "oriented cycle through vertex " + std::to_string(v);
    state[v] = 2;
    for (VertexId u : chain) state[u] = 2;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> OrientedForest::key() const {
  std::vector<std::uint32_t> k(out_.size(), 0);
  for (std::size_t v = 0; v < out_.size(); ++v)
    if (out_[v]) k[v] = 2 * out_[v]->edge + (out_[v]->reversed ? 1u : 0u) + 1;
  return k;
}

std::vector<int> forest_components(const Network& net, const OrientedForest& f, std::optional<VertexId> skip) {
  const std::size_t n = f.vertex_count();
  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto& e = f.out_edge(v);
    if (!e) continue;
    VertexId w = net.head(*e);
    if (skip && (v == *skip || w == *skip)) continue;
    adj[v].push_back(w);
    adj[w].push_back(v);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] >= 0 || (skip && s == *skip)) continue;
    label[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adj[v])
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

}  // namespace cyclebreak
