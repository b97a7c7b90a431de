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

#include "cyclebreak/update.hpp"

#include <algorithm>
#include <string>

namespace cyclebreak {

std::string_view to_string(UpdateCase c) {
  switch (c) {
    case UpdateCase::kNoOp:
      return "no-op";
    case UpdateCase::kPast:
      return "past";
    case UpdateCase::kNonPast:
      return "non-past";
  }
  return "unknown";
}

std::vector<VertexId> past(const Network& net, const OrientedForest& f, VertexId v) {
  net.check_vertex(v);
  if (f.vertex_count() != net.vertex_count()) throw std::invalid_argument("forest does not match network");
  std::vector<std::vector<VertexId>> into(net.vertex_count());
  for (VertexId u = 0; u < net.vertex_count(); ++u)
    if (const auto& e = f.out_edge(u)) into[net.head(*e)].push_back(u);
  std::vector<VertexId> result{v};
  for (std::size_t i = 0; i < result.size(); ++i)
    for (VertexId u : into[result[i]]) result.push_back(u);
  std::sort(result.begin(), result.end());
  return result;
}

bool in_past(const Network& net, const OrientedForest& f, VertexId u, VertexId v) {
  net.check_vertex(u);
  net.check_vertex(v);
  // Chains are at most n long in a valid forest; the bound guards against
  // malformed input.
  VertexId at = u;
  for (std::size_t steps = 0; steps <= net.vertex_count(); ++steps) {
    if (at == v) return true;
    const auto& e = f.out_edge(at);
    if (!e) return false;
    at = net.head(*e);
  }
  throw std::invalid_argument("forest contains an oriented cycle");
}

UpdateOutcome update(const Network& net, const OrientedForest& f, OrientedEdge e) {
  UpdateOutcome out{f, UpdateCase::kNoOp, std::nullopt, {}};
  if (net.is_self_loop(e.edge) || f.contains(net, e) || f.contains(net, e.reversal())) return out;

  const VertexId t = net.tail(e);
  const VertexId h = net.head(e);
  const auto& tail_out = f.out_edge(t);
  if (!tail_out)
    throw RootTailError("update at an edge whose tail " + std::to_string(t) + " is a root of the forest");

  if (in_past(net, f, h, t)) {
    // Path x0 = h -> x1 -> ... -> xk -> t; the last edge is d, and each
    // earlier edge flips. h now points back along e.
    std::vector<OrientedEdge> chain;
    for (VertexId at = h; at != t; at = net.head(chain.back())) chain.push_back(*f.out_edge(at));
    out.kind = UpdateCase::kPast;
    out.deleted = chain.back();
    out.forest.set_out_edge(net.tail(chain.back()), std::nullopt);
    out.forest.set_out_edge(h, e.reversal());
    out.reversed_path.push_back(e.reversal());
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      OrientedEdge flipped = chain[i].reversal();
      out.forest.set_out_edge(net.tail(flipped), flipped);
      out.reversed_path.push_back(flipped);
    }
    return out;
  }

  out.kind = UpdateCase::kNonPast;
  out.deleted = *tail_out;
  out.forest.set_out_edge(t, e);
  return out;
}

OrientedForest dynamics_step(const Network& net, const OrientedForest& f, VertexId v, Rng& rng) {
  if (f.is_root(v)) throw RootTailError("dynamics vertex " + std::to_string(v) + " is a root of the forest");
  return update(net, f, net.pick_out_edge(v, rng.uniform())).forest;
}

DynamicsStep dynamics_step_traced(const Network& net, OrientedForest& f, VertexId v, Rng& rng) {
  if (f.is_root(v)) throw RootTailError("dynamics vertex " + std::to_string(v) + " is a root of the forest");
  OrientedEdge proposed = net.pick_out_edge(v, rng.uniform());
  UpdateOutcome outcome = update(net, f, proposed);
  f = std::move(outcome.forest);
  return {proposed, outcome.kind, outcome.deleted};
}

PathUpdateResult update_along_path(const Network& net, const OrientedForest& f, std::span<const VertexId> gamma,
                                   EdgeChoice choice) {
  PathUpdateResult result{f, {}, {}};
  for (std::size_t i = 1; i < gamma.size(); ++i) {
    const VertexId from = gamma[i];
    const VertexId to = gamma[i - 1];
    auto candidates = net.edges_between(from, to);
    if (candidates.empty())
      throw MissingEdgeError("no edge between path vertices " + std::to_string(from) + " and " + std::to_string(to));
    const EdgeId id = choice == EdgeChoice::kLowestId ? candidates.front() : candidates.back();
    const OrientedEdge e{id, net.first_endpoint(id) != from};
    UpdateOutcome step = update(net, result.forest, e);
    result.forest = std::move(step.forest);
    result.edges.push_back(e);
    result.cases.push_back(step.kind);
  }
  return result;
}

}  // namespace cyclebreak
