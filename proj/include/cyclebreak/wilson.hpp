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
#include <vector>

#include "cyclebreak/forest.hpp"
#include "cyclebreak/network.hpp"
#include "cyclebreak/rng.hpp"
#include "cyclebreak/source.hpp"

namespace cyclebreak {

struct WilsonOptions {
  /// Step budget for each branch walk; exceeding it aborts the sample.
  std::uint64_t max_steps = 100'000'000;
  /// Process only the first `stop_after` vertices of the enumeration. The
  /// out-edges of those vertices then have exactly their joint law under
  /// the full sample; the remaining vertices are left as roots.
  std::size_t stop_after = std::numeric_limits<std::size_t>::max();
};

/// Wilson's algorithm with the given roots already in the tree. Branches are
/// loop-erased walks oriented chronologically, so every non-root vertex
/// points toward the root set. `order` lists vertices to start walks from;
/// vertices it omits follow in ascending id order.
OrientedForest wilson_forest(const Network& net, std::span<const VertexId> roots, std::span<const VertexId> order,
                             Rng& rng, const WilsonOptions& options = {});

/// Spanning tree oriented toward `root`, with probability proportional to
/// the product of its conductances.
OrientedForest wilson_rooted(const Network& net, VertexId root, std::span<const VertexId> order, Rng& rng,
                             const WilsonOptions& options = {});

/// Spanning tree of the contraction oriented toward its boundary vertex.
/// Throws ContractionError when there is none.
OrientedForest sample_oust(const WiredContraction& contraction, std::span<const VertexId> order, Rng& rng,
                           const WilsonOptions& options = {});

struct WindowSample {
  WiredContraction window;
  OrientedForest forest;
};

/// Finite-window stand-in for the oriented wired forest: the oriented tree
/// of truncate(source, depth). Requires depth >= 1.
WindowSample sample_owusf_window(const NetworkSource& source, int depth, Rng& rng,
                                 const WilsonOptions& options = {});

/// The sampled tree as seen from the original network: one arc per kept
/// vertex, with `head` empty when the arc escapes through the boundary.
struct KeptArc {
  SourceVertex vertex;
  std::uint64_t edge;
  std::optional<SourceVertex> head;
};
std::vector<KeptArc> kept_arcs(const WiredContraction& contraction, const OrientedForest& forest);

}  // namespace cyclebreak
