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

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclebreak/network.hpp"
#include "cyclebreak/rational.hpp"

namespace cyclebreak {

using SourceVertex = std::uint64_t;

struct SourceEdge {
  std::uint64_t key;   // stable edge id, identical from both endpoints
  SourceVertex other;  // the far endpoint
  Rational c;
};

/// Deterministic lazy view of a locally finite, possibly infinite network.
///
/// Implementations must be pure: repeated neighbor queries on one instance
/// return identical lists, and every edge is reported from both endpoints
/// with the same key and conductance. Instances are safe for concurrent
/// readers.
class NetworkSource {
 public:
  virtual ~NetworkSource() = default;

  virtual SourceVertex root() const = 0;
  virtual std::vector<SourceEdge> neighbors(SourceVertex v) const = 0;

  /// Hint used by experiments that need the free (rather than wired)
  /// window on recurrent graphs, where the two coincide in the limit.
  virtual bool recurrent() const { return false; }
  virtual std::string name() const = 0;
};

class ContractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kNoOriginal = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::int64_t kBoundaryLabel = std::numeric_limits<std::int64_t>::min();

/// A finite network obtained by keeping a vertex set and wiring everything
/// else into a single boundary vertex. Self-loops created at the boundary
/// are dropped. When nothing leaves the kept set there is no boundary
/// vertex and the result is just the induced network.
struct WiredContraction {
  Network network;
  std::optional<VertexId> boundary;

  /// Original vertex key per contracted vertex (kNoOriginal for the boundary).
  std::vector<std::uint64_t> original_vertex;
  /// Original edge key per contracted edge.
  std::vector<std::uint64_t> original_edge;
  std::unordered_map<std::uint64_t, VertexId> vertex_of;
  std::unordered_map<std::uint64_t, EdgeId> edge_of;

  /// Window centre and graph distances from it (through kept vertices
  /// only). Set by truncate(), or by assign_root() for hand-built windows.
  std::optional<VertexId> root;
  std::vector<int> distance;
  /// Truncation depth; -1 when the contraction was not built as a ball.
  int radius = -1;

  bool has_boundary() const { return boundary.has_value(); }
  /// Throws ContractionError when there is no boundary vertex.
  VertexId boundary_vertex() const;
  bool is_boundary(VertexId v) const { return boundary && *boundary == v; }
  /// Per contracted vertex: had at least one edge leaving the kept set.
  std::vector<char> exits;

  /// True when `v` had an edge leaving the kept set (for wired windows,
  /// an edge to the boundary vertex).
  bool touches_boundary(VertexId v) const { return v < exits.size() && exits[v]; }
  std::vector<VertexId> kept_vertices() const;
  std::optional<EdgeId> contracted_edge(std::uint64_t original) const;

  void assign_root(VertexId r);
  /// Radius of the window: `radius` when truncated, else the largest
  /// root distance among kept vertices.
  int window_depth() const;
};

WiredContraction wired_contract(const Network& base, std::span<const VertexId> keep);
WiredContraction wired_contract(const NetworkSource& source, std::span<const SourceVertex> keep);

/// Ball of radius `depth` around the source root, wired at its complement.
WiredContraction truncate(const NetworkSource& source, int depth);

/// The same ball with a free boundary: edges leaving the ball are dropped
/// and no boundary vertex is added; `exits` still marks where they were.
WiredContraction truncate_free(const NetworkSource& source, int depth);

}  // namespace cyclebreak
