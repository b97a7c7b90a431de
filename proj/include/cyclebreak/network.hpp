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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclebreak/rational.hpp"

namespace cyclebreak {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// An edge together with a direction. `reversed == false` runs from the
/// edge's first endpoint to its second.
struct OrientedEdge {
  EdgeId edge = 0;
  bool reversed = false;

  constexpr OrientedEdge reversal() const { return {edge, !reversed}; }
  friend constexpr auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

class NetworkError : public std::runtime_error {
 public:
  enum class Code {
    kEmpty,
    kUnknownVertex,
    kUnknownEdge,
    kNonPositiveConductance,
    kDisconnected,
    kDuplicateLabel,
  };

  NetworkError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Finite weighted multigraph with strictly positive conductances. Parallel
/// edges and self-loops are allowed; the graph must be connected.
///
/// Vertices and edges are numbered 0..n-1 in construction order, and that
/// order is the enumeration used wherever iteration order matters. Each
/// vertex and edge also carries an external integer label used for I/O.
/// Conductances are kept both exactly and as doubles.
class Network {
 public:
  class Builder;

  std::size_t vertex_count() const { return vertex_labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  VertexId first_endpoint(EdgeId e) const { return edge(e).u; }
  VertexId second_endpoint(EdgeId e) const { return edge(e).v; }
  VertexId tail(OrientedEdge e) const { return e.reversed ? edge(e.edge).v : edge(e.edge).u; }
  VertexId head(OrientedEdge e) const { return e.reversed ? edge(e.edge).u : edge(e.edge).v; }
  bool is_self_loop(EdgeId e) const { return edge(e).u == edge(e).v; }
  VertexId other_endpoint(EdgeId e, VertexId v) const;

  const Rational& conductance(EdgeId e) const { return edge(e).c; }
  double weight(EdgeId e) const { return edge(e).weight; }

  /// Sum of incident conductances; a self-loop counts twice.
  double conductance_at(VertexId v) const;
  const Rational& exact_conductance_at(VertexId v) const;

  /// Oriented edges with tail `v`, in edge construction order. A self-loop
  /// at `v` appears twice (once per orientation).
  std::span<const OrientedEdge> out_edges(VertexId v) const;

  /// Picks the out-edge of `v` whose cumulative weight bracket contains
  /// `u * conductance_at(v)`, for `u` in [0, 1).
  OrientedEdge pick_out_edge(VertexId v, double u) const;

  /// All edge ids joining `a` and `b` (either direction), ascending.
  std::vector<EdgeId> edges_between(VertexId a, VertexId b) const;

  std::int64_t vertex_label(VertexId v) const;
  std::int64_t edge_label(EdgeId e) const { return edge(e).label; }
  std::optional<VertexId> find_vertex(std::int64_t label) const;
  std::optional<EdgeId> find_edge(std::int64_t label) const;

  void check_vertex(VertexId v) const;

 private:
  struct EdgeRecord {
    VertexId u;
    VertexId v;
    Rational c;
    double weight;
    std::int64_t label;
  };

  const EdgeRecord& edge(EdgeId e) const;

  std::vector<std::int64_t> vertex_labels_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::int64_t, VertexId> vertex_index_;
  std::unordered_map<std::int64_t, EdgeId> edge_index_;
  std::vector<std::size_t> out_offsets_;
  std::vector<OrientedEdge> out_list_;
  std::vector<double> out_cumulative_;
  std::vector<Rational> exact_vertex_conductance_;
};

class Network::Builder {
 public:
  /// Adds a vertex; labels default to the vertex index.
  VertexId add_vertex();
  VertexId add_vertex(std::int64_t label);
  EdgeId add_edge(VertexId u, VertexId v, const Rational& c);
  EdgeId add_edge(VertexId u, VertexId v, const Rational& c, std::int64_t label);

  std::size_t vertex_count() const { return net_.vertex_labels_.size(); }

  /// Validates connectivity and builds the adjacency index.
  Network build() &&;

 private:
  Network net_;
};

/// Convenience for tests and generators: builds a network on vertices
/// 0..n-1 from (u, v, c) triples.
struct EdgeSpec {
  VertexId u;
  VertexId v;
  Rational c;
};
Network make_network(std::size_t vertex_count, const std::vector<EdgeSpec>& edges);

}  // namespace cyclebreak
