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
#include <span>
#include <stdexcept>
#include <vector>

#include "cyclebreak/network.hpp"
#include "cyclebreak/rng.hpp"

namespace cyclebreak {

/// A walk: start vertex plus the oriented edges traversed, chained
/// head-to-tail.
struct Path {
  VertexId start = 0;
  std::vector<OrientedEdge> edges;

  std::size_t length() const { return edges.size(); }
  VertexId end(const Network& net) const { return edges.empty() ? start : net.head(edges.back()); }
  /// start, head(edges[0]), head(edges[1]), ...
  std::vector<VertexId> vertices(const Network& net) const;
  /// True when the edges chain from `start`.
  bool is_chained(const Network& net) const;
};

class StepBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One step of the conductance walk from `v`: an out-edge chosen with
/// probability c(e)/c(v). Self-loops are offered in both orientations.
OrientedEdge walk_step(const Network& net, VertexId v, Rng& rng);

/// Walks from `start` until the first visit to a vertex with
/// `in_target[v] != 0`. Returns the empty path when `start` is a target.
/// Throws StepBudgetExceeded after `max_steps` steps without a hit.
Path walk_until_hit(const Network& net, VertexId start, std::span<const char> in_target, Rng& rng,
                    std::uint64_t max_steps);
Path walk_until_hit(const Network& net, VertexId start, std::span<const VertexId> targets, Rng& rng,
                    std::uint64_t max_steps);

/// Chronological loop erasure. The surviving edge out of each retained
/// vertex is the one used on its last departure, so parallel edges keep
/// their identity.
Path loop_erase(const Network& net, const Path& path);

}  // namespace cyclebreak
