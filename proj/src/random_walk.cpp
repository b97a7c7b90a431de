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

#include "cyclebreak/random_walk.hpp"

#include <string>
#include <unordered_set>

namespace cyclebreak {

std::vector<VertexId> Path::vertices(const Network& net) const {
  std::vector<VertexId> out;
  out.reserve(edges.size() + 1);
  out.push_back(start);
  for (const auto& e : edges) out.push_back(net.head(e));
  return out;
}

bool Path::is_chained(const Network& net) const {
  VertexId at = start;
  for (const auto& e : edges) {
    if (net.tail(e) != at) return false;
    at = net.head(e);
  }
  return true;
}

OrientedEdge walk_step(const Network& net, VertexId v, Rng& rng) { return net.pick_out_edge(v, rng.uniform()); }

Path walk_until_hit(const Network& net, VertexId start, std::span<const char> in_target, Rng& rng,
                    std::uint64_t max_steps) {
  net.check_vertex(start);
  if (in_target.size() != net.vertex_count()) throw std::invalid_argument("target mask has wrong size");
  Path path{start, {}};
  VertexId at = start;
  while (!in_target[at]) {
    if (path.edges.size() >= max_steps)
      throw StepBudgetExceeded("walk from vertex " + std::to_string(start) + " did not hit the target set within " +
                               std::to_string(max_steps) + " steps");
    OrientedEdge e = walk_step(net, at, rng);
    path.edges.push_back(e);
    at = net.head(e);
  }
  return path;
}

Path walk_until_hit(const Network& net, VertexId start, std::span<const VertexId> targets, Rng& rng,
                    std::uint64_t max_steps) {
  if (targets.empty()) throw std::invalid_argument("target set is empty");
  std::vector<char> mask(net.vertex_count(), 0);
  for (VertexId t : targets) {
    net.check_vertex(t);
    mask[t] = 1;
  }
  return walk_until_hit(net, start, mask, rng, max_steps);
}

Path loop_erase(const Network& net, const Path& path) {
  // Stack of retained vertices. Revisiting a retained vertex pops
  // everything above it, which discards exactly the loop just closed.
  std::vector<VertexId> stack{path.start};
  std::vector<OrientedEdge> arrival;
  std::unordered_set<VertexId> on_stack{path.start};
  for (const auto& e : path.edges) {
    VertexId w = net.head(e);
    if (on_stack.count(w)) {
      while (stack.back() != w) {
        on_stack.erase(stack.back());
        stack.pop_back();
        arrival.pop_back();
      }
    } else {
      on_stack.insert(w);
      stack.push_back(w);
      arrival.push_back(e);
    }
  }
  return Path{path.start, std::move(arrival)};
}

}  // namespace cyclebreak
