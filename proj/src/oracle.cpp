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

#include "cyclebreak/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "cyclebreak/update.hpp"

namespace cyclebreak {

std::optional<std::size_t> TreeDistribution::index_of(const std::vector<EdgeId>& sorted_edges) const {
  auto it = by_edges.find(sorted_edges);
  if (it == by_edges.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> TreeDistribution::index_of(const OrientedForest& oriented) const {
  auto it = by_orientation.find(oriented.key());
  if (it == by_orientation.end()) return std::nullopt;
  return it->second;
}

std::vector<double> TreeDistribution::probabilities() const {
  std::vector<double> p;
  p.reserve(trees.size());
  for (const auto& t : trees) p.push_back(t.probability.get_d());
  return p;
}

namespace {

// Union-find with undo, for backtracking over edge subsets.
class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }

  void undo() {
    std::size_t b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

OrientedForest orient_toward(const Network& net, const std::vector<EdgeId>& edges, VertexId root) {
  std::vector<std::vector<EdgeId>> adj(net.vertex_count());
  for (EdgeId e : edges) {
    adj[net.first_endpoint(e)].push_back(e);
    adj[net.second_endpoint(e)].push_back(e);
  }
  OrientedForest f(net.vertex_count());
  std::vector<char> seen(net.vertex_count(), 0);
  std::deque<VertexId> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : adj[v]) {
      VertexId w = net.other_endpoint(e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      // w points toward v: tail w.
      f.set_out_edge(w, OrientedEdge{e, net.first_endpoint(e) != w});
      queue.push_back(w);
    }
  }
  return f;
}

}  // namespace

TreeDistribution enumerate_spanning_trees(const Network& net, std::optional<VertexId> root, std::size_t max_edges) {
  if (net.edge_count() > max_edges)
    throw OracleError(OracleError::Code::kBudgetExceeded,
                      "enumeration budget exceeded: " + std::to_string(net.edge_count()) + " edges > " +
                          std::to_string(max_edges));
  if (root) net.check_vertex(*root);

  std::vector<EdgeId> candidates;
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (!net.is_self_loop(e)) candidates.push_back(e);

  const std::size_t need = net.vertex_count() - 1;
  TreeDistribution dist;
  dist.root = root;
  dist.total_weight = 0;
  RollbackDsu dsu(net.vertex_count());
  std::vector<EdgeId> chosen;

  auto record = [&] {
    SpanningTree t{chosen, std::nullopt, Rational(1), Rational(0)};
    for (EdgeId e : chosen) t.weight *= net.conductance(e);
    if (root) t.oriented = orient_toward(net, chosen, *root);
    dist.total_weight += t.weight;
    dist.trees.push_back(std::move(t));
  };

  auto recurse = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == need) {
      record();
      return;
    }
    const std::size_t remaining = need - chosen.size();
    for (std::size_t i = from; i + remaining <= candidates.size(); ++i) {
      EdgeId e = candidates[i];
      if (!dsu.unite(net.first_endpoint(e), net.second_endpoint(e))) continue;
      chosen.push_back(e);
      self(self, i + 1);
      chosen.pop_back();
      dsu.undo();
    }
  };
  recurse(recurse, 0);

  for (std::size_t i = 0; i < dist.trees.size(); ++i) {
    auto& t = dist.trees[i];
    t.probability = t.weight / dist.total_weight;
    dist.by_edges.emplace(t.edges, i);
    if (t.oriented) dist.by_orientation.emplace(t.oriented->key(), i);
  }
  return dist;
}

Rational kirchhoff_total(const Network& net) {
  const std::size_t n = net.vertex_count();
  if (n == 1) return Rational(1);
  const std::size_t m = n - 1;
  // Reduced Laplacian on vertices 1..n-1; self-loops do not contribute.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (net.is_self_loop(e)) continue;
    const VertexId u = net.first_endpoint(e);
    const VertexId v = net.second_endpoint(e);
    const Rational& c = net.conductance(e);
    if (u > 0) a[u - 1][u - 1] += c;
    if (v > 0) a[v - 1][v - 1] += c;
    if (u > 0 && v > 0) {
      a[u - 1][v - 1] -= c;
      a[v - 1][u - 1] -= c;
    }
  }
  Rational det(1);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == m) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < m; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < m; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  return det;
}

Rational KernelMatrix::at(std::size_t from, std::size_t to) const {
  const auto& row = rows.at(from);
  auto it = std::lower_bound(row.begin(), row.end(), to, [](const auto& entry, std::size_t col) { return entry.first < col; });
  if (it != row.end() && it->first == to) return it->second;
  return Rational(0);
}

KernelMatrix build_kernel(const WiredContraction& contraction, VertexId v, std::size_t max_states) {
  const Network& net = contraction.network;
  const VertexId boundary = contraction.boundary_vertex();
  net.check_vertex(v);
  if (v == boundary)
    throw OracleError(OracleError::Code::kBoundaryVertex, "the cycle-breaking chain is not defined at the boundary");

  TreeDistribution dist = enumerate_spanning_trees(net, boundary);
  if (dist.trees.size() > max_states)
    throw OracleError(OracleError::Code::kBudgetExceeded,
                      "state space too large: " + std::to_string(dist.trees.size()) + " > " +
                          std::to_string(max_states));

  KernelMatrix kernel;
  kernel.vertex = v;
  for (auto& t : dist.trees) kernel.states.push_back(*t.oriented);

  const Rational& cv = net.exact_conductance_at(v);
  kernel.rows.resize(kernel.states.size());
  for (std::size_t s = 0; s < kernel.states.size(); ++s) {
    std::map<std::size_t, Rational> row;
    for (const auto& e : net.out_edges(v)) {
      OrientedForest next = update(net, kernel.states[s], e).forest;
      auto idx = dist.index_of(next);
      if (!idx) throw std::logic_error("update left the oriented spanning tree state space");
      auto [it, inserted] = row.try_emplace(*idx, Rational(0));
      it->second += net.conductance(e.edge) / cv;
    }
    kernel.rows[s].assign(row.begin(), row.end());
  }
  return kernel;
}

StationarityReport certify_stationarity(const KernelMatrix& kernel, const TreeDistribution& dist) {
  const std::size_t n = kernel.states.size();
  if (dist.trees.size() != n)
    throw OracleError(OracleError::Code::kStateMismatch, "kernel and distribution have different state counts");
  std::vector<Rational> pi(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto idx = dist.index_of(kernel.states[s]);
    if (!idx) throw OracleError(OracleError::Code::kStateMismatch, "kernel state missing from the distribution");
    pi[s] = dist.trees[*idx].probability;
  }

  StationarityReport report;
  report.states = n;
  report.max_stationarity_residual = 0;
  report.max_detailed_balance_residual = 0;

  std::vector<Rational> flow(n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& [b, p] : kernel.rows[a]) {
      flow[b] += pi[a] * p;
      Rational gap = pi[a] * p - pi[b] * kernel.at(b, a);
      gap = abs(gap);
      if (gap > report.max_detailed_balance_residual) report.max_detailed_balance_residual = gap;
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    Rational gap = abs(flow[s] - pi[s]);
    if (gap > report.max_stationarity_residual) report.max_stationarity_residual = gap;
  }
  report.passed = sgn(report.max_stationarity_residual) == 0 && sgn(report.max_detailed_balance_residual) == 0;
  return report;
}

ToleranceReport certify_update_tolerance(const WiredContraction& contraction, const TreeDistribution& dist,
                                         OrientedEdge e, Rng& rng, std::size_t sampled_events) {
  const Network& net = contraction.network;
  const VertexId t = net.tail(e);
  if (contraction.is_boundary(t))
    throw OracleError(OracleError::Code::kBoundaryVertex, "update-tolerance is only defined for edges leaving kept vertices");
  const std::size_t n = dist.trees.size();
  if (n > kMaxKernelStates)
    throw OracleError(OracleError::Code::kBudgetExceeded, "state space too large: " + std::to_string(n));

  std::vector<std::size_t> image(n);
  std::vector<Rational> pi(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!dist.trees[s].oriented) throw OracleError(OracleError::Code::kStateMismatch, "distribution is not oriented");
    pi[s] = dist.trees[s].probability;
    auto idx = dist.index_of(update(net, *dist.trees[s].oriented, e).forest);
    if (!idx) throw std::logic_error("update left the oriented spanning tree state space");
    image[s] = *idx;
  }

  ToleranceReport report;
  report.states = n;
  report.ratio = net.conductance(e.edge) / net.exact_conductance_at(t);
  report.exhaustive = n <= kExhaustiveEventStates;
  bool first = true;
  std::vector<char> hit(n);

  auto check = [&](const std::vector<std::size_t>& event) {
    std::fill(hit.begin(), hit.end(), 0);
    Rational mass(0), image_mass(0);
    for (std::size_t s : event) {
      mass += pi[s];
      if (!hit[image[s]]) {
        hit[image[s]] = 1;
        image_mass += pi[image[s]];
      }
    }
    Rational slack = image_mass - report.ratio * mass;
    ++report.events;
    if (first || slack < report.min_slack) {
      report.min_slack = slack;
      if (sgn(slack) < 0) report.counterexample = event;
    }
    first = false;
  };

  std::vector<std::size_t> event;
  if (report.exhaustive) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      event.clear();
      for (std::size_t s = 0; s < n; ++s)
        if (mask >> s & 1) event.push_back(s);
      check(event);
    }
  } else {
    for (std::size_t k = 0; k < sampled_events; ++k) {
      // Mix sparse and dense events by drawing the inclusion rate first.
      const double rate = rng.uniform();
      event.clear();
      for (std::size_t s = 0; s < n; ++s)
        if (rng.uniform() < rate) event.push_back(s);
      check(event);
    }
  }
  report.passed = sgn(report.min_slack) >= 0;
  return report;
}

}  // namespace cyclebreak
