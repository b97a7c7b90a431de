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
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclebreak/forest.hpp"
#include "cyclebreak/network.hpp"
#include "cyclebreak/rational.hpp"
#include "cyclebreak/rng.hpp"
#include "cyclebreak/source.hpp"

namespace cyclebreak {

class OracleError : public std::runtime_error {
 public:
  enum class Code { kBudgetExceeded, kBoundaryVertex, kStateMismatch };

  OracleError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct SpanningTree {
  std::vector<EdgeId> edges;  // ascending
  std::optional<OrientedForest> oriented;
  Rational weight;
  Rational probability;
};

/// Exact law of the weighted spanning tree: weight(t) = prod c(e),
/// probability(t) = weight(t) / total_weight.
struct TreeDistribution {
  std::vector<SpanningTree> trees;
  Rational total_weight;
  std::optional<VertexId> root;

  std::optional<std::size_t> index_of(const std::vector<EdgeId>& sorted_edges) const;
  std::optional<std::size_t> index_of(const OrientedForest& oriented) const;
  std::vector<double> probabilities() const;

  std::map<std::vector<EdgeId>, std::size_t> by_edges;
  std::map<std::vector<std::uint32_t>, std::size_t> by_orientation;
};

inline constexpr std::size_t kMaxEnumerationEdges = 25;
inline constexpr std::size_t kMaxKernelStates = 5000;

/// Every spanning tree with its exact weight, by backtracking over edge
/// subsets of size |V|-1 in edge order. With `root`, each tree also
/// carries its unique orientation toward the root.
TreeDistribution enumerate_spanning_trees(const Network& net, std::optional<VertexId> root = std::nullopt,
                                          std::size_t max_edges = kMaxEnumerationEdges);

/// Weighted spanning-tree total via the matrix-tree theorem: the
/// determinant of the Laplacian with vertex 0's row and column removed.
Rational kirchhoff_total(const Network& net);

/// Exact transition matrix of the cycle-breaking chain at `v` on oriented
/// spanning trees of a contraction. States follow the order of
/// enumerate_spanning_trees(network, boundary).
struct KernelMatrix {
  std::vector<OrientedForest> states;
  /// Sparse rows: (column, probability), ascending by column.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  VertexId vertex = 0;

  Rational at(std::size_t from, std::size_t to) const;
};

KernelMatrix build_kernel(const WiredContraction& contraction, VertexId v, std::size_t max_states = kMaxKernelStates);

struct StationarityReport {
  std::size_t states = 0;
  Rational max_stationarity_residual;   // max_t |(pi P)(t) - pi(t)|
  Rational max_detailed_balance_residual;  // max |pi(a)P(a,b) - pi(b)P(b,a)|
  bool passed = false;
};

/// Passes only when both residuals are exactly zero.
StationarityReport certify_stationarity(const KernelMatrix& kernel, const TreeDistribution& dist);

struct ToleranceReport {
  std::size_t states = 0;
  std::size_t events = 0;
  bool exhaustive = false;
  Rational ratio;       // c(e) / c(tail e)
  Rational min_slack;   // min over events of P(U(A,e)) - ratio * P(A)
  bool passed = false;
  std::vector<std::size_t> counterexample;  // state indices of a failing event
};

inline constexpr std::size_t kExhaustiveEventStates = 12;

/// Checks P(U(A,e)) >= c(e)/c(tail e) * P(A) exactly, for every event A
/// when the state space has at most kExhaustiveEventStates states, and for
/// `sampled_events` random events otherwise.
ToleranceReport certify_update_tolerance(const WiredContraction& contraction, const TreeDistribution& dist,
                                         OrientedEdge e, Rng& rng, std::size_t sampled_events = 10'000);

}  // namespace cyclebreak
