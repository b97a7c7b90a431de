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

#include "cyclebreak/network.hpp"

#include <algorithm>
#include <numeric>

namespace cyclebreak {

const Network::EdgeRecord& Network::edge(EdgeId e) const {
  if (e >= edges_.size())
    throw NetworkError(NetworkError::Code::kUnknownEdge, "unknown edge id " + std::to_string(e));
  return edges_[e];
}

void Network::check_vertex(VertexId v) const {
  if (v >= vertex_labels_.size())
    throw NetworkError(NetworkError::Code::kUnknownVertex, "unknown vertex id " + std::to_string(v));
}

VertexId Network::other_endpoint(EdgeId e, VertexId v) const {
  const auto& r = edge(e);
  return r.u == v ? r.v : r.u;
}

double Network::conductance_at(VertexId v) const {
  check_vertex(v);
  const std::size_t lo = out_offsets_[v];
  const std::size_t hi = out_offsets_[v + 1];
  return lo == hi ? 0.0 : out_cumulative_[hi - 1];
}

const Rational& Network::exact_conductance_at(VertexId v) const {
  check_vertex(v);
  return exact_vertex_conductance_[v];
}

std::span<const OrientedEdge> Network::out_edges(VertexId v) const {
  check_vertex(v);
  return {out_list_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

OrientedEdge Network::pick_out_edge(VertexId v, double u) const {
  check_vertex(v);
  const std::size_t lo = out_offsets_[v];
  const std::size_t hi = out_offsets_[v + 1];
  if (lo == hi) throw std::logic_error("vertex " + std::to_string(v) + " has no incident edges");
  const double target = u * out_cumulative_[hi - 1];
  auto first = out_cumulative_.begin() + static_cast<std::ptrdiff_t>(lo);
  auto last = out_cumulative_.begin() + static_cast<std::ptrdiff_t>(hi);
  auto it = std::upper_bound(first, last, target);
  std::size_t idx = static_cast<std::size_t>(it - out_cumulative_.begin());
  if (idx >= hi) idx = hi - 1;
  return out_list_[idx];
}

std::vector<EdgeId> Network::edges_between(VertexId a, VertexId b) const {
  std::vector<EdgeId> result;
  for (const auto& oe : out_edges(a))
    if (head(oe) == b && (result.empty() || result.back() != oe.edge)) result.push_back(oe.edge);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::int64_t Network::vertex_label(VertexId v) const {
  check_vertex(v);
  return vertex_labels_[v];
}

std::optional<VertexId> Network::find_vertex(std::int64_t label) const {
  auto it = vertex_index_.find(label);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Network::find_edge(std::int64_t label) const {
  auto it = edge_index_.find(label);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Network::Builder::add_vertex() {
  return add_vertex(static_cast<std::int64_t>(net_.vertex_labels_.size()));
}

VertexId Network::Builder::add_vertex(std::int64_t label) {
  const auto id = static_cast<VertexId>(net_.vertex_labels_.size());
  if (!net_.vertex_index_.emplace(label, id).second)
    throw NetworkError(NetworkError::Code::kDuplicateLabel, "duplicate vertex label " + std::to_string(label));
  net_.vertex_labels_.push_back(label);
  return id;
}

EdgeId Network::Builder::add_edge(VertexId u, VertexId v, const Rational& c) {
  return add_edge(u, v, c, static_cast<std::int64_t>(net_.edges_.size()));
}

EdgeId Network::Builder::add_edge(VertexId u, VertexId v, const Rational& c, std::int64_t label) {
  net_.check_vertex(u);
  net_.check_vertex(v);
  if (sgn(c) <= 0)
    throw NetworkError(NetworkError::Code::kNonPositiveConductance,
                       "conductance must be positive, got " + to_string(c));
  const auto id = static_cast<EdgeId>(net_.edges_.size());
  if (!net_.edge_index_.emplace(label, id).second)
    throw NetworkError(NetworkError::Code::kDuplicateLabel, "duplicate edge label " + std::to_string(label));
  net_.edges_.push_back({u, v, c, c.get_d(), label});
  return id;
}

Network Network::Builder::build() && {
  Network net = std::move(net_);
  const std::size_t n = net.vertex_labels_.size();
  if (n == 0) throw NetworkError(NetworkError::Code::kEmpty, "network has no vertices");

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : net.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  net.out_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) net.out_offsets_[v + 1] = net.out_offsets_[v] + degree[v];
  net.out_list_.resize(net.out_offsets_[n]);
  std::vector<std::size_t> fill(net.out_offsets_.begin(), net.out_offsets_.end() - 1);
  for (EdgeId id = 0; id < net.edges_.size(); ++id) {
    const auto& e = net.edges_[id];
    net.out_list_[fill[e.u]++] = {id, false};
    net.out_list_[fill[e.v]++] = {id, true};
  }

  // Per-vertex inclusive prefix sums: out_list_[i] owns [cum[i-1], cum[i])
  // within its vertex's slice.
  net.out_cumulative_.assign(net.out_list_.size(), 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double running = 0.0;
    for (std::size_t i = net.out_offsets_[v]; i < net.out_offsets_[v + 1]; ++i) {
      running += net.edges_[net.out_list_[i].edge].weight;
      net.out_cumulative_[i] = running;
    }
  }

  net.exact_vertex_conductance_.assign(n, Rational(0));
  for (const auto& e : net.edges_) {
    net.exact_vertex_conductance_[e.u] += e.c;
    net.exact_vertex_conductance_[e.v] += e.c;
  }

  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (std::size_t i = net.out_offsets_[v]; i < net.out_offsets_[v + 1]; ++i) {
      VertexId w = net.head(net.out_list_[i]);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n)
    throw NetworkError(NetworkError::Code::kDisconnected,
                       "network is disconnected (" + std::to_string(reached) + " of " + std::to_string(n) +
                           " vertices reachable)");
  return net;
}

Network make_network(std::size_t vertex_count, const std::vector<EdgeSpec>& edges) {
  Network::Builder builder;
  for (std::size_t i = 0; i < vertex_count; ++i) builder.add_vertex();
  for (const auto& e : edges) builder.add_edge(e.u, e.v, e.c);
  return std::move(builder).build();
}

}  // namespace cyclebreak
