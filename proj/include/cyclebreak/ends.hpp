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
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclebreak/forest.hpp"
#include "cyclebreak/source.hpp"
#include "cyclebreak/update.hpp"

namespace cyclebreak {

// Finite-window proxies for the number of ends of forest components.
//
// A window is a contraction with an assigned root (so that graph distances
// are known). Components are those of the forest restricted to kept
// vertices: edges into the boundary vertex are removed. A component's
// boundary-ray count at radius r is the number of pieces of the component
// outside the radius-r ball that contain a vertex with an edge leaving
// the window.

class EndsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Component label per contracted vertex (-1 for the boundary vertex).
std::vector<int> window_components(const WiredContraction& window, const OrientedForest& forest);

/// Requires 0 <= r < window.window_depth(); throws EndsError otherwise.
int boundary_rays(const WiredContraction& window, const OrientedForest& forest, int component, int r);
int boundary_rays_of_vertex(const WiredContraction& window, const OrientedForest& forest, VertexId v, int r);

/// For a component with exactly two rays at radius r: the unique tree path
/// between one boundary-touching vertex of each ray (the farthest from the
/// root, ties to the lowest id). Empty otherwise.
std::optional<std::vector<VertexId>> trunk_candidate(const WiredContraction& window, const OrientedForest& forest,
                                                     int component, int r);

struct ComponentSummary {
  int component = 0;
  std::size_t vertex_count = 0;
  int boundary_rays = 0;
  std::optional<std::vector<VertexId>> trunk;
};
std::vector<ComponentSummary> summarize_components(const WiredContraction& window, const OrientedForest& forest, int r);

/// A forest with two-ended components and a path gamma to update along.
struct ThreeEndsFixture {
  std::string name;
  WiredContraction window;
  OrientedForest forest;
  std::vector<VertexId> gamma;
  int radius = 0;
};

struct ThreeEndsReport {
  std::string fixture;
  bool preconditions_met = false;
  std::string precondition_failure;
  /// ray_counts[i]: rays of gamma_i's component in F_i.
  std::vector<int> ray_counts;
  std::vector<UpdateCase> cases;
  int final_rays = 0;
  bool nondecreasing = false;
  bool passed = false;
};

/// Checks the fixture's hypotheses (gamma_0 and gamma_n in distinct
/// two-ray components, gamma_n on its trunk, earlier gamma_i off it), then
/// updates along gamma and records the ray count after each step.
/// Precondition failures are reported, not thrown.
ThreeEndsReport three_ends_experiment(const ThreeEndsFixture& fixture);

/// Two parallel two-ended paths joined by a single rung (n = 1).
ThreeEndsFixture canonical_three_ends_fixture();
/// Same paths joined through a connector vertex hanging off the second
/// path's trunk (n = 2).
ThreeEndsFixture two_step_three_ends_fixture();
/// Control: gamma ends at the connector, which is not on any trunk.
ThreeEndsFixture degenerate_three_ends_fixture();

}  // namespace cyclebreak
