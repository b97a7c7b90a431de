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

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cyclebreak/forest.hpp"
#include "cyclebreak/network.hpp"
#include "cyclebreak/rng.hpp"

namespace cyclebreak {

enum class UpdateCase { kNoOp, kPast, kNonPast };

std::string_view to_string(UpdateCase c);

/// Thrown when an update is requested at an edge whose tail is a root of
/// the forest and the no-op rule does not apply.
class RootTailError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct UpdateOutcome {
  OrientedForest forest;
  UpdateCase kind = UpdateCase::kNoOp;
  /// Edge removed from the forest, in its orientation before the update.
  std::optional<OrientedEdge> deleted;
  /// Past case only: the oriented edges inserted reversed, starting with the
  /// reversal of the proposed edge.
  std::vector<OrientedEdge> reversed_path;
};

/// Vertices with a directed path to `v` in `f`, including `v` itself,
/// in ascending order.
std::vector<VertexId> past(const Network& net, const OrientedForest& f, VertexId v);

/// True when `u` lies in the past of `v`, i.e. following out-edges from `u`
/// reaches `v`.
bool in_past(const Network& net, const OrientedForest& f, VertexId u, VertexId v);

/// Adds `e` to the forest and removes the edge that closes the resulting
/// (possibly wired) cycle at tail(e):
///   - no-op when e or its reversal is already present, or e is a self-loop;
///   - when head(e) is in the past of tail(e), the directed path
///     head(e) -> ... -> tail(e) loses its last edge and the rest of it is
///     reversed, together with e;
///   - otherwise the out-edge of tail(e) is replaced by e.
/// As unoriented forests the result is always f + e - d.
UpdateOutcome update(const Network& net, const OrientedForest& f, OrientedEdge e);

/// One step of the cycle-breaking chain at `v`: proposes an out-edge of `v`
/// with probability c(e)/c(v) and applies update().
OrientedForest dynamics_step(const Network& net, const OrientedForest& f, VertexId v, Rng& rng);

/// Step record for dynamics traces.
struct DynamicsStep {
  OrientedEdge proposed;
  UpdateCase kind;
  std::optional<OrientedEdge> deleted;
};
DynamicsStep dynamics_step_traced(const Network& net, OrientedForest& f, VertexId v, Rng& rng);

enum class EdgeChoice { kLowestId, kHighestId };

struct PathUpdateResult {
  OrientedForest forest;
  std::vector<OrientedEdge> edges;  // e_1..e_n, tail gamma_i, head gamma_{i-1}
  std::vector<UpdateCase> cases;
};

class MissingEdgeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterates F_i = update(F_{i-1}, e_i) where e_i runs from gamma[i] back to
/// gamma[i-1]. Parallel edges are resolved by `choice`.
PathUpdateResult update_along_path(const Network& net, const OrientedForest& f, std::span<const VertexId> gamma,
                                   EdgeChoice choice = EdgeChoice::kLowestId);

}  // namespace cyclebreak
