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
#include <optional>
#include <string>
#include <vector>

#include "cyclebreak/network.hpp"

namespace cyclebreak {

/// Map from vertices to at most one outgoing oriented edge. A valid forest
/// has no oriented cycles; vertices without an out-edge are its roots.
///
/// The forest does not hold its network. Every query that needs edge
/// endpoints takes the network explicitly.
class OrientedForest {
 public:
  OrientedForest() = default;
  explicit OrientedForest(std::size_t vertex_count) : out_(vertex_count) {}

  std::size_t vertex_count() const { return out_.size(); }
  const std::optional<OrientedEdge>& out_edge(VertexId v) const { return out_.at(v); }
  void set_out_edge(VertexId v, std::optional<OrientedEdge> e) { out_.at(v) = e; }

  bool is_root(VertexId v) const { return !out_.at(v).has_value(); }
  std::vector<VertexId> roots() const;
  std::size_t edge_count() const;

  bool contains(const Network& net, OrientedEdge e) const { return out_.at(net.tail(e)) == e; }
  /// Physical-edge membership in either orientation.
  bool contains_edge(const Network& net, EdgeId e) const;

  /// Underlying unoriented edge set, ascending.
  std::vector<EdgeId> unoriented_edges() const;

  /// Empty when the forest is valid on `net`, else a description of the
  /// first violated invariant.
  std::optional<std::string> validate(const Network& net) const;

  /// Compact encoding (0 for roots, 2*edge+reversed+1 otherwise) usable as
  /// a map key.
  std::vector<std::uint32_t> key() const;

  friend bool operator==(const OrientedForest&, const OrientedForest&) = default;

 private:
  std::vector<std::optional<OrientedEdge>> out_;
};

/// Connected-component label per vertex of the unoriented forest, ignoring
/// forest edges incident to `skip` (whose own label is -1). Labels are
/// dense and assigned in increasing order of each component's smallest
/// vertex.
std::vector<int> forest_components(const Network& net, const OrientedForest& f,
                                   std::optional<VertexId> skip = std::nullopt);

}  // namespace cyclebreak
