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

#include "cyclebreak/ends.hpp"

#include <algorithm>
#include <deque>

namespace cyclebreak {

namespace {

std::vector<std::vector<VertexId>> kept_adjacency(const WiredContraction& window, const OrientedForest& forest) {
  const Network& net = window.network;
  std::vector<std::vector<VertexId>> adj(net.vertex_count());
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    const auto& e = forest.out_edge(v);
    if (!e) continue;
    VertexId w = net.head(*e);
    if (window.is_boundary(v) || window.is_boundary(w)) continue;
    adj[v].push_back(w);
    adj[w].push_back(v);
  }
  return adj;
}

void require_radius(const WiredContraction& window, int r) {
  if (!window.root) throw EndsError("window has no root; call assign_root first");
  const int depth = window.window_depth();
  if (r < 0 || r >= depth)
    throw EndsError("radius " + std::to_string(r) + " must lie in [0, " + std::to_string(depth) + ")");
}

// Pieces of `component` outside the radius-r ball; label per vertex, -1
// for vertices not in any piece.
std::vector<int> outer_pieces(const WiredContraction& window, const std::vector<std::vector<VertexId>>& adj,
                              const std::vector<int>& comp, int component, int r, int& count) {
  const std::size_t n = window.network.vertex_count();
  auto outside = [&](VertexId v) { return comp[v] == component && window.distance[v] > r; };
  std::vector<int> piece(n, -1);
  count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (!outside(s) || piece[s] >= 0) continue;
    piece[s] = count;
    stack.assign(1, s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adj[v])
        if (outside(w) && piece[w] < 0) {
          piece[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return piece;
}

std::vector<char> pieces_reaching_boundary(const WiredContraction& window, const std::vector<int>& piece, int count) {
  std::vector<char> reaches(static_cast<std::size_t>(count), 0);
  for (VertexId v = 0; v < piece.size(); ++v)
    if (piece[v] >= 0 && window.touches_boundary(v)) reaches[static_cast<std::size_t>(piece[v])] = 1;
  return reaches;
}

}  // namespace

std::vector<int> window_components(const WiredContraction& window, const OrientedForest& forest) {
  return forest_components(window.network, forest, window.boundary);
}

int boundary_rays(const WiredContraction& window, const OrientedForest& forest, int component, int r) {
  require_radius(window, r);
  auto comp = window_components(window, forest);
  auto adj = kept_adjacency(window, forest);
  int count = 0;
  auto piece = outer_pieces(window, adj, comp, component, r, count);
  auto reaches = pieces_reaching_boundary(window, piece, count);
  return static_cast<int>(std::count(reaches.begin(), reaches.end(), 1));
}

int boundary_rays_of_vertex(const WiredContraction& window, const OrientedForest& forest, VertexId v, int r) {
  auto comp = window_components(window, forest);
  if (comp.at(v) < 0) throw EndsError("the boundary vertex belongs to no component");
  return boundary_rays(window, forest, comp[v], r);
}

std::optional<std::vector<VertexId>> trunk_candidate(const WiredContraction& window, const OrientedForest& forest,
                                                     int component, int r) {
  require_radius(window, r);
  auto comp = window_components(window, forest);
  auto adj = kept_adjacency(window, forest);
  int count = 0;
  auto piece = outer_pieces(window, adj, comp, component, r, count);
  auto reaches = pieces_reaching_boundary(window, piece, count);
  if (std::count(reaches.begin(), reaches.end(), 1) != 2) return std::nullopt;

  std::vector<VertexId> ends;
  for (int p = 0; p < count; ++p) {
    if (!reaches[static_cast<std::size_t>(p)]) continue;
    std::optional<VertexId> best;
    for (VertexId v = 0; v < piece.size(); ++v) {
      if (piece[v] != p || !window.touches_boundary(v)) continue;
      if (!best || window.distance[v] > window.distance[*best]) best = v;
    }
    ends.push_back(*best);
  }

  // The component is a tree, so the BFS path between the ends is unique.
  std::vector<long> parent(window.network.vertex_count(), -2);
  std::deque<VertexId> queue{ends[0]};
  parent[ends[0]] = -1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : adj[v])
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  std::vector<VertexId> path;
  for (long at = ends[1]; at != -1; at = parent[static_cast<std::size_t>(at)]) path.push_back(static_cast<VertexId>(at));
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<ComponentSummary> summarize_components(const WiredContraction& window, const OrientedForest& forest, int r) {
  auto comp = window_components(window, forest);
  int components = 0;
  for (int c : comp) components = std::max(components, c + 1);
  std::vector<ComponentSummary> out(static_cast<std::size_t>(components));
  for (int c : comp)
    if (c >= 0) ++out[static_cast<std::size_t>(c)].vertex_count;
  for (int c = 0; c < components; ++c) {
    auto& s = out[static_cast<std::size_t>(c)];
    s.component = c;
    s.boundary_rays = boundary_rays(window, forest, c, r);
    if (s.boundary_rays == 2) s.trunk = trunk_candidate(window, forest, c, r);
  }
  return out;
}

ThreeEndsReport three_ends_experiment(const ThreeEndsFixture& fixture) {
  ThreeEndsReport report;
  report.fixture = fixture.name;
  const auto& window = fixture.window;
  const auto& gamma = fixture.gamma;
  const int r = fixture.radius;

  auto fail = [&](std::string why) {
    report.precondition_failure = std::move(why);
    return report;
  };

  if (gamma.empty()) return fail("gamma is empty");
  for (VertexId v : gamma)
    if (v >= window.network.vertex_count() || window.is_boundary(v)) return fail("gamma leaves the kept vertices");
  for (std::size_t i = 1; i < gamma.size(); ++i)
    if (window.network.edges_between(gamma[i], gamma[i - 1]).empty()) return fail("gamma is not a path in the window");
  if (auto err = fixture.forest.validate(window.network)) return fail("invalid forest: " + *err);

  auto comp = window_components(window, fixture.forest);
  const VertexId first = gamma.front();
  const VertexId last = gamma.back();
  if (comp[first] == comp[last]) return fail("gamma_0 and gamma_n share a component");
  if (boundary_rays(window, fixture.forest, comp[first], r) != 2) return fail("gamma_0's component is not two-ended");
  if (boundary_rays(window, fixture.forest, comp[last], r) != 2) return fail("gamma_n's component is not two-ended");
  auto trunk = trunk_candidate(window, fixture.forest, comp[last], r);
  if (!trunk || std::find(trunk->begin(), trunk->end(), last) == trunk->end())
    return fail("gamma_n is not on the trunk of its component");
  for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
    if (std::find(trunk->begin(), trunk->end(), gamma[i]) != trunk->end())
      return fail("gamma_" + std::to_string(i) + " lies on gamma_n's trunk");
  report.preconditions_met = true;

  OrientedForest current = fixture.forest;
  report.ray_counts.push_back(boundary_rays_of_vertex(window, current, first, r));
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    const VertexId step[] = {gamma[i - 1], gamma[i]};
    auto result = update_along_path(window.network, current, step);
    current = std::move(result.forest);
    report.cases.push_back(result.cases.front());
    report.ray_counts.push_back(boundary_rays_of_vertex(window, current, gamma[i], r));
  }
  report.final_rays = report.ray_counts.back();
  report.nondecreasing = std::is_sorted(report.ray_counts.begin(), report.ray_counts.end());
  report.passed = report.final_rays >= 3 && report.nondecreasing;
  return report;
}

namespace {

// Two paths p_{-L..L} and q_{-L..L} with L = depth + 1, optionally with a
// connector vertex m joined to p_0 and q_0 (otherwise a rung p_0 - q_0).
// Kept: |j| <= depth, plus m. Root p_0. Both paths are oriented left to
// right and leave through their right end.
struct Ladder {
  WiredContraction window;
  OrientedForest forest;
  VertexId p0, q0;
  std::optional<VertexId> m;
};

Ladder build_ladder(bool with_connector, bool connector_on_q) {
  constexpr int depth = 8;
  constexpr int span = depth + 1;
  Network::Builder b;
  auto index = [&](int row, int j) { return static_cast<VertexId>(row * (2 * span + 1) + (j + span)); };
  for (int row = 0; row < 2; ++row)
    for (int j = -span; j <= span; ++j) b.add_vertex(row * 1000 + j);
  for (int row = 0; row < 2; ++row)
    for (int j = -span; j < span; ++j) b.add_edge(index(row, j), index(row, j + 1), Rational(1));
  std::optional<VertexId> m;
  if (with_connector) {
    m = b.add_vertex(5000);
    b.add_edge(index(0, 0), *m, Rational(1));
    b.add_edge(*m, index(1, 0), Rational(1));
  } else {
    b.add_edge(index(0, 0), index(1, 0), Rational(1));
  }
  Network base = std::move(b).build();

  std::vector<VertexId> keep;
  for (int row = 0; row < 2; ++row)
    for (int j = -depth; j <= depth; ++j) keep.push_back(index(row, j));
  if (m) keep.push_back(*m);

  Ladder ladder{wired_contract(base, keep), {}, 0, 0, std::nullopt};
  auto& w = ladder.window;
  const Network& net = w.network;
  auto kept = [&](int row, int j) { return w.vertex_of.at(index(row, j)); };
  ladder.p0 = kept(0, 0);
  ladder.q0 = kept(1, 0);
  w.assign_root(ladder.p0);
  w.radius = depth;

  OrientedForest f(net.vertex_count());
  for (int row = 0; row < 2; ++row) {
    for (int j = -depth; j <= depth; ++j) {
      VertexId v = kept(row, j);
      VertexId next = j < depth ? kept(row, j + 1) : w.boundary_vertex();
      EdgeId e = net.edges_between(v, next).front();
      f.set_out_edge(v, OrientedEdge{e, net.first_endpoint(e) != v});
    }
  }
  if (m) {
    ladder.m = w.vertex_of.at(*m);
    VertexId target = connector_on_q ? ladder.q0 : ladder.p0;
    EdgeId e = net.edges_between(*ladder.m, target).front();
    f.set_out_edge(*ladder.m, OrientedEdge{e, net.first_endpoint(e) != *ladder.m});
  }
  ladder.forest = std::move(f);
  return ladder;
}

}  // namespace

ThreeEndsFixture canonical_three_ends_fixture() {
  Ladder l = build_ladder(false, false);
  return {"canonical-rung", std::move(l.window), std::move(l.forest), {l.p0, l.q0}, 4};
}

ThreeEndsFixture two_step_three_ends_fixture() {
  Ladder l = build_ladder(true, true);
  return {"two-step-connector", std::move(l.window), std::move(l.forest), {l.p0, *l.m, l.q0}, 4};
}

ThreeEndsFixture degenerate_three_ends_fixture() {
  Ladder l = build_ladder(true, true);
  return {"degenerate-off-trunk", std::move(l.window), std::move(l.forest), {l.p0, *l.m}, 4};
}

}  // namespace cyclebreak
