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

#include "cyclebreak/source.hpp"

#include <bit>
#include <deque>
#include <unordered_set>

namespace cyclebreak {

VertexId WiredContraction::boundary_vertex() const {
  if (!boundary) throw ContractionError("contraction has no boundary vertex");
  return *boundary;
}

std::vector<VertexId> WiredContraction::kept_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < network.vertex_count(); ++v)
    if (!is_boundary(v)) out.push_back(v);
  return out;
}

std::optional<EdgeId> WiredContraction::contracted_edge(std::uint64_t original) const {
  auto it = edge_of.find(original);
  if (it == edge_of.end()) return std::nullopt;
  return it->second;
}

void WiredContraction::assign_root(VertexId r) {
  network.check_vertex(r);
  if (is_boundary(r)) throw ContractionError("window root cannot be the boundary vertex");
  root = r;
  distance.assign(network.vertex_count(), -1);
  std::deque<VertexId> queue{r};
  distance[r] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& oe : network.out_edges(v)) {
      VertexId w = network.head(oe);
      if (is_boundary(w) || distance[w] >= 0) continue;
      distance[w] = distance[v] + 1;
      queue.push_back(w);
    }
  }
}

int WiredContraction::window_depth() const {
  if (radius >= 0) return radius;
  int depth = 0;
  for (int d : distance) depth = std::max(depth, d);
  return depth;
}

namespace {

std::int64_t as_label(std::uint64_t key) { return std::bit_cast<std::int64_t>(key); }

// Shared tail of the source-based constructions: `keep` in order, with the
// neighbor list of each kept vertex already fetched.
WiredContraction contract_lists(std::span<const SourceVertex> keep,
                                const std::vector<std::vector<SourceEdge>>& lists, bool wire) {
  WiredContraction out;
  Network::Builder builder;
  for (SourceVertex key : keep) {
    if (out.vertex_of.count(key)) throw ContractionError("duplicate vertex in kept set");
    out.vertex_of.emplace(key, builder.add_vertex(as_label(key)));
    out.original_vertex.push_back(key);
  }
  out.exits.assign(keep.size(), 0);

  struct Pending {
    VertexId u;
    std::optional<VertexId> v;  // nullopt: leaves the kept set
    const Rational* c;
    std::uint64_t key;
  };
  std::vector<Pending> pending;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto u = static_cast<VertexId>(i);
    for (const auto& e : lists[i]) {
      auto it = out.vertex_of.find(e.other);
      if (it == out.vertex_of.end()) {
        out.exits[u] = 1;
        if (seen.insert(e.key).second) pending.push_back({u, std::nullopt, &e.c, e.key});
      } else if (seen.insert(e.key).second) {
        pending.push_back({u, it->second, &e.c, e.key});
      }
    }
  }

  bool any_exit = false;
  for (char x : out.exits) any_exit = any_exit || x;
  if (wire && any_exit) {
    out.boundary = builder.add_vertex(kBoundaryLabel);
    out.original_vertex.push_back(kNoOriginal);
    out.exits.push_back(0);
  }
  for (const auto& p : pending) {
    if (!p.v && !wire) continue;
    VertexId v = p.v ? *p.v : *out.boundary;
    EdgeId id = builder.add_edge(p.u, v, *p.c, as_label(p.key));
    out.original_edge.push_back(p.key);
    out.edge_of.emplace(p.key, id);
  }
  out.network = std::move(builder).build();
  return out;
}

WiredContraction ball(const NetworkSource& source, int depth, bool wire) {
  if (depth < 0) throw ContractionError("truncation depth must be nonnegative");
  std::vector<SourceVertex> order{source.root()};
  std::vector<int> dist{0};
  std::vector<std::vector<SourceEdge>> lists;
  std::unordered_map<SourceVertex, std::size_t> index{{source.root(), 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    lists.push_back(source.neighbors(order[i]));
    if (dist[i] == depth) continue;
    for (const auto& e : lists.back()) {
      if (index.emplace(e.other, order.size()).second) {
        order.push_back(e.other);
        dist.push_back(dist[i] + 1);
      }
    }
  }
  WiredContraction out = contract_lists(order, lists, wire);
  out.root = 0;
  out.radius = depth;
  out.distance = dist;
  if (out.boundary) out.distance.push_back(-1);
  return out;
}

}  // namespace

WiredContraction wired_contract(const Network& base, std::span<const VertexId> keep) {
  if (keep.empty()) throw ContractionError("kept vertex set is empty");
  WiredContraction out;
  Network::Builder builder;
  std::vector<int> local(base.vertex_count(), -1);
  for (VertexId v : keep) {
    base.check_vertex(v);
    if (local[v] >= 0) throw ContractionError("duplicate vertex in kept set");
    local[v] = static_cast<int>(builder.add_vertex(base.vertex_label(v)));
    out.vertex_of.emplace(v, static_cast<VertexId>(local[v]));
    out.original_vertex.push_back(v);
  }
  out.exits.assign(keep.size(), 0);
  bool any_exit = false;
  for (EdgeId e = 0; e < base.edge_count(); ++e) {
    int a = local[base.first_endpoint(e)];
    int b = local[base.second_endpoint(e)];
    if ((a >= 0) != (b >= 0)) {
      out.exits[static_cast<std::size_t>(a >= 0 ? a : b)] = 1;
      any_exit = true;
    }
  }
  if (any_exit) {
    out.boundary = builder.add_vertex(kBoundaryLabel);
    out.original_vertex.push_back(kNoOriginal);
    out.exits.push_back(0);
  }
  for (EdgeId e = 0; e < base.edge_count(); ++e) {
    int a = local[base.first_endpoint(e)];
    int b = local[base.second_endpoint(e)];
    if (a < 0 && b < 0) continue;
    VertexId u = a >= 0 ? static_cast<VertexId>(a) : *out.boundary;
    VertexId v = b >= 0 ? static_cast<VertexId>(b) : *out.boundary;
    EdgeId id = builder.add_edge(u, v, base.conductance(e), base.edge_label(e));
    out.original_edge.push_back(e);
    out.edge_of.emplace(e, id);
  }
  out.network = std::move(builder).build();
  return out;
}

WiredContraction wired_contract(const NetworkSource& source, std::span<const SourceVertex> keep) {
  if (keep.empty()) throw ContractionError("kept vertex set is empty");
  std::vector<std::vector<SourceEdge>> lists;
  lists.reserve(keep.size());
  for (SourceVertex v : keep) lists.push_back(source.neighbors(v));
  return contract_lists(keep, lists, true);
}

WiredContraction truncate(const NetworkSource& source, int depth) { return ball(source, depth, true); }

WiredContraction truncate_free(const NetworkSource& source, int depth) { return ball(source, depth, false); }

}  // namespace cyclebreak
