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

#include "cyclebreak/generators.hpp"

#include <algorithm>
#include <cmath>

#include "cyclebreak/wilson.hpp"

namespace cyclebreak {

// --- OffspringDistribution --------------------------------------------------

OffspringDistribution::OffspringDistribution(std::vector<Rational> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw GeneratorError(GeneratorError::Code::kInvalidDistribution, "offspring law is empty");
  Rational total(0);
  for (const auto& q : p_) {
    if (sgn(q) < 0) throw GeneratorError(GeneratorError::Code::kInvalidDistribution, "negative offspring probability");
    total += q;
  }
  if (total != 1)
    throw GeneratorError(GeneratorError::Code::kInvalidDistribution,
                         "offspring probabilities sum to " + to_string(total) + ", not 1");
  while (p_.size() > 1 && sgn(p_.back()) == 0) p_.pop_back();
  Rational running(0);
  for (const auto& q : p_) {
    running += q;
    cumulative_.push_back(running.get_d());
  }
}

Rational OffspringDistribution::mean() const {
  Rational m(0);
  for (std::size_t k = 0; k < p_.size(); ++k) m += Rational(static_cast<unsigned long>(k)) * p_[k];
  return m;
}

std::uint32_t OffspringDistribution::sample(double u) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - cumulative_.begin());
  if (k >= p_.size()) k = p_.size() - 1;
  // Skip zero-probability atoms that a boundary value could land on.
  while (sgn(p_[k]) == 0 && k + 1 < p_.size()) ++k;
  return static_cast<std::uint32_t>(k);
}

// --- LazyTree ----------------------------------------------------------------

LazyTree::LazyTree(ChildCount count, std::uint64_t root_hash) : count_(std::move(count)), root_hash_(root_hash) {
  nodes_.push_back({0, root_hash_, 0, 0, 0});
  level_start_ = {0, 1};
}

void LazyTree::grow_to(std::uint32_t depth) const {
  // Generations 0..level_start_.size()-2 exist; children of the deepest one
  // are not yet known.
  while (level_start_.size() - 1 <= depth) {
    const std::uint64_t begin = level_start_[level_start_.size() - 2];
    const std::uint64_t end = level_start_.back();
    for (std::uint64_t id = begin; id < end; ++id) {
      Node& parent = nodes_[id];
      const std::uint32_t k = count_(parent.hash, parent.depth);
      parent.first_child = nodes_.size();
      parent.children = k;
      const Node snapshot = parent;
      for (std::uint32_t i = 0; i < k; ++i)
        nodes_.push_back({id, child_hash(snapshot.hash, i), snapshot.depth + 1, 0, 0});
    }
    level_start_.push_back(nodes_.size());
  }
}

LazyTree::Node LazyTree::node(std::uint64_t id) const {
  std::lock_guard lock(mutex_);
  // Grow whole generations until `id` exists or the tree dies out.
  while (id >= nodes_.size() && level_start_.back() > level_start_[level_start_.size() - 2])
    grow_to(static_cast<std::uint32_t>(level_start_.size() - 1));
  if (id >= nodes_.size()) throw std::out_of_range("tree vertex " + std::to_string(id) + " has not been generated");
  grow_to(nodes_[id].depth + 1);
  return nodes_[id];
}

bool LazyTree::reaches_depth(std::uint32_t depth) const {
  auto search = [&](auto&& self, std::uint64_t hash, std::uint32_t d) -> bool {
    if (d >= depth) return true;
    const std::uint32_t k = count_(hash, d);
    for (std::uint32_t i = 0; i < k; ++i)
      if (self(self, child_hash(hash, i), d + 1)) return true;
    return false;
  };
  return search(search, root_hash_, 0);
}

namespace {

std::vector<SourceEdge> tree_neighbors(const LazyTree& tree, std::uint64_t id, std::uint64_t tag, const Rational& c) {
  const auto node = tree.node(id);
  std::vector<SourceEdge> out;
  out.reserve(node.children + 1);
  // The edge to a parent is keyed by the child's id.
  if (id != 0) out.push_back({id | tag, node.parent | tag, c});
  for (std::uint32_t i = 0; i < node.children; ++i) {
    const std::uint64_t child = node.first_child + i;
    out.push_back({child | tag, child | tag, c});
  }
  return out;
}

double hash_uniform(std::uint64_t hash) { return static_cast<double>(splitmix64(hash) >> 11) * 0x1.0p-53; }

}  // namespace

// --- Galton-Watson -------------------------------------------------------------

GaltonWatsonSource::GaltonWatsonSource(OffspringDistribution dist, std::uint64_t seed, std::uint32_t survive_depth)
    : dist_(std::move(dist)) {
  auto count = [law = dist_](std::uint64_t hash, std::uint32_t) { return law.sample(hash_uniform(hash)); };
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t candidate = derive_seed(seed, attempt);
    auto tree = std::make_unique<LazyTree>(count, candidate);
    if (survive_depth == 0 || tree->reaches_depth(survive_depth)) {
      attempts_ = attempt + 1;
      tree_seed_ = candidate;
      tree_ = std::move(tree);
      return;
    }
  }
  throw GeneratorError(GeneratorError::Code::kRejectionBudget,
                       "no realization reached depth " + std::to_string(survive_depth) + " within " +
                           std::to_string(kMaxAttempts) + " attempts");
}

std::vector<SourceEdge> GaltonWatsonSource::neighbors(SourceVertex v) const {
  return tree_neighbors(*tree_, v, 0, Rational(1));
}

std::shared_ptr<const GaltonWatsonSource> gw_source(const OffspringDistribution& dist, std::uint64_t seed,
                                                    std::uint32_t survive_depth) {
  if (!dist.supercritical())
    throw GeneratorError(GeneratorError::Code::kNotSupercritical,
                         "offspring mean " + to_string(dist.mean()) + " is not greater than 1");
  return std::make_shared<const GaltonWatsonSource>(dist, seed, survive_depth);
}

AugmentedGaltonWatsonSource::AugmentedGaltonWatsonSource(const OffspringDistribution& dist, std::uint64_t seed,
                                                         std::uint32_t survive_depth)
    : first_(dist, derive_seed(seed, 1), survive_depth), second_(dist, derive_seed(seed, 2), 0) {}

std::vector<SourceEdge> AugmentedGaltonWatsonSource::neighbors(SourceVertex v) const {
  const bool in_second = (v & kSecondTree) != 0;
  const std::uint64_t local = v & ~kSecondTree;
  std::vector<SourceEdge> out;
  if (in_second) {
    out = second_.neighbors(local);
    for (auto& e : out) {
      e.key |= kSecondTree;
      e.other |= kSecondTree;
    }
  } else {
    out = first_.neighbors(local);
  }
  // The joining edge is keyed by the second root's tagged id.
  if (local == 0) out.push_back({kSecondTree, in_second ? SourceVertex{0} : kSecondTree, Rational(1)});
  return out;
}

std::shared_ptr<const AugmentedGaltonWatsonSource> augmented_gw_source(const OffspringDistribution& dist,
                                                                       std::uint64_t seed,
                                                                       std::uint32_t survive_depth) {
  if (!dist.supercritical())
    throw GeneratorError(GeneratorError::Code::kNotSupercritical,
                         "offspring mean " + to_string(dist.mean()) + " is not greater than 1");
  return std::make_shared<const AugmentedGaltonWatsonSource>(dist, seed, survive_depth);
}

// --- Regular tree and lattice ------------------------------------------------

RegularTreeSource::RegularTreeSource(std::uint32_t degree)
    : degree_(degree),
      tree_([degree](std::uint64_t, std::uint32_t depth) { return depth == 0 ? degree : degree - 1; }, 0) {
  if (degree < 2) throw GeneratorError(GeneratorError::Code::kInvalidParameter, "tree degree must be at least 2");
}

std::vector<SourceEdge> RegularTreeSource::neighbors(SourceVertex v) const {
  return tree_neighbors(tree_, v, 0, Rational(1));
}

std::shared_ptr<const RegularTreeSource> regular_tree(std::uint32_t degree) {
  return std::make_shared<const RegularTreeSource>(degree);
}

LatticeSource::LatticeSource(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension > 3)
    throw GeneratorError(GeneratorError::Code::kInvalidParameter, "lattice dimension must be 1, 2 or 3");
}

SourceVertex LatticeSource::encode(const std::vector<long>& x) const {
  constexpr long offset = 1L << (kBits - 1);
  SourceVertex id = 0;
  for (int a = 0; a < dim_; ++a) {
    const long shifted = x[static_cast<std::size_t>(a)] + offset;
    if (shifted < 0 || shifted >= (1L << kBits)) throw std::out_of_range("lattice coordinate out of range");
    id |= static_cast<SourceVertex>(shifted) << (kBits * a);
  }
  return id;
}

std::vector<long> LatticeSource::decode(SourceVertex v) const {
  constexpr long offset = 1L << (kBits - 1);
  std::vector<long> x(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a)
    x[static_cast<std::size_t>(a)] = static_cast<long>((v >> (kBits * a)) & ((1UL << kBits) - 1)) - offset;
  return x;
}

std::vector<SourceEdge> LatticeSource::neighbors(SourceVertex v) const {
  auto x = decode(v);
  std::vector<SourceEdge> out;
  for (int a = 0; a < dim_; ++a) {
    for (long step : {-1L, 1L}) {
      auto y = x;
      y[static_cast<std::size_t>(a)] += step;
      const SourceVertex w = encode(y);
      // Edge {x, x + e_a} is keyed by its lower endpoint and axis.
      const SourceVertex lower = step < 0 ? w : v;
      out.push_back({(lower << 2) | static_cast<std::uint64_t>(a), w, Rational(1)});
    }
  }
  return out;
}

std::shared_ptr<const LatticeSource> lattice_source(int dimension) { return std::make_shared<const LatticeSource>(dimension); }

Network zd_box(int dimension, int side) {
  if (dimension < 1 || side < 1)
    throw GeneratorError(GeneratorError::Code::kInvalidParameter, "box needs dimension >= 1 and side >= 1");
  std::size_t count = 1;
  for (int a = 0; a < dimension; ++a) count *= static_cast<std::size_t>(side);
  Network::Builder b;
  for (std::size_t i = 0; i < count; ++i) b.add_vertex();
  // Index i has coordinates in base `side`, last axis fastest.
  std::size_t stride = 1;
  for (int a = dimension - 1; a >= 0; --a) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t coord = (i / stride) % static_cast<std::size_t>(side);
      if (coord + 1 < static_cast<std::size_t>(side))
        b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i + stride), Rational(1));
    }
    stride *= static_cast<std::size_t>(side);
  }
  return std::move(b).build();
}

// --- tree with hanging paths -----------------------------------------------------

Example52Source::Example52Source(Rational tree_conductance)
    : tree_c_(std::move(tree_conductance)),
      tree_([](std::uint64_t, std::uint32_t depth) { return depth == 0 ? 3u : 2u; }, 0) {
  if (sgn(tree_c_) <= 0)
    throw GeneratorError(GeneratorError::Code::kInvalidParameter, "tree conductance must be positive");
}

Rational Example52Source::path_conductance(std::uint64_t n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
  return Rational(mpz_class(1), den);
}

std::vector<SourceEdge> Example52Source::neighbors(SourceVertex v) const {
  const std::uint64_t t = tree_part(v);
  const std::uint64_t n = path_index(v);
  std::vector<SourceEdge> out;
  if (n == 0) {
    for (auto e : tree_neighbors(tree_, t, 0, tree_c_)) {
      e.key = tree_vertex(e.key);
      e.other = tree_vertex(e.other);
      out.push_back(std::move(e));
    }
    out.push_back({path_vertex(t, 1), path_vertex(t, 1), path_conductance(1)});
    return out;
  }
  if (n + 1 >= (std::uint64_t{1} << kPathBits)) throw std::out_of_range("path index exceeds encoding range");
  // Path edges are keyed by their far endpoint.
  out.push_back({v, n == 1 ? tree_vertex(t) : path_vertex(t, n - 1), path_conductance(n)});
  out.push_back({path_vertex(t, n + 1), path_vertex(t, n + 1), path_conductance(n + 1)});
  return out;
}

std::shared_ptr<const Example52Source> example52_source(Rational tree_conductance) {
  return std::make_shared<const Example52Source>(std::move(tree_conductance));
}

SourceVertex example52_root(Rng& rng) {
  // o with probability 4/7; otherwise n >= 1 with probability 2^{-n}.
  if (rng.below(7) < 4) return Example52Source::tree_vertex(0);
  std::uint64_t n = 1;
  while (rng.below(2) == 1) ++n;
  return Example52Source::path_vertex(0, n);
}

Rational example52_root_probability(SourceVertex v) {
  if (Example52Source::tree_part(v) != 0) return Rational(0);
  const std::uint64_t n = Example52Source::path_index(v);
  if (n == 0) return Rational(4, 7);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return Rational(mpz_class(3), den * 7);
}

// --- Reversibility -------------------------------------------------------------

PairClassifier example52_classifier() {
  return [](SourceVertex root, SourceVertex step) -> std::optional<PairClass> {
    using S = Example52Source;
    if (S::tree_part(root) != 0) return std::nullopt;
    const std::uint64_t n = S::path_index(root);
    const bool step_on_o_path = S::tree_part(step) == 0;
    const std::uint64_t m = S::path_index(step);
    auto name = [](std::uint64_t k) { return k == 0 ? std::string("o") : "o" + std::to_string(k); };
    if (n == 0) {
      if (step_on_o_path && m == 1) return PairClass{"o>o1", "o1>o"};
      if (m == 0 && S::tree_part(step) != 0) return PairClass{"o>o'", "o>o'"};
      return std::nullopt;
    }
    if (!step_on_o_path || (m + 1 != n && m != n + 1)) return std::nullopt;
    return PairClass{name(n) + ">" + name(m), name(m) + ">" + name(n)};
  };
}

const ClassFrequency* ReversibilityReport::find(const std::string& label) const {
  for (const auto& c : classes)
    if (c.label == label) return &c;
  return nullptr;
}

void PairTally::merge(const PairTally& other) {
  samples += other.samples;
  for (const auto& [label, n] : other.counts) counts[label] += n;
  for (const auto& [label, swapped] : other.partner) partner[label] = swapped;
}

PairTally tally_pairs(const NetworkSource& source, const RootLaw& root_law, const PairClassifier& classifier,
                      std::uint64_t samples, Rng& rng) {
  PairTally tally;
  tally.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const SourceVertex root = root_law(rng);
    const auto edges = source.neighbors(root);
    if (edges.empty()) throw ClassifierError("root has no neighbors");
    double total = 0.0;
    for (const auto& e : edges) total += e.c.get_d();
    const double target = rng.uniform() * total;
    double running = 0.0;
    SourceVertex step = edges.back().other;
    for (const auto& e : edges) {
      running += e.c.get_d();
      if (target < running) {
        step = e.other;
        break;
      }
    }
    auto cls = classifier(root, step);
    if (!cls)
      throw ClassifierError("classifier could not place the pair (" + std::to_string(root) + ", " +
                            std::to_string(step) + ")");
    ++tally.counts[cls->label];
    tally.partner[cls->label] = cls->swapped;
    tally.partner[cls->swapped] = cls->label;
  }
  return tally;
}

ReversibilityReport summarize_pairs(const PairTally& tally) {
  ReversibilityReport report;
  report.samples = tally.samples;
  const double n = static_cast<double>(tally.samples);
  auto count_of = [&](const std::string& label) {
    auto it = tally.counts.find(label);
    return it == tally.counts.end() ? std::uint64_t{0} : it->second;
  };
  auto freq = [&](std::uint64_t k) {
    const double p = n > 0 ? static_cast<double>(k) / n : 0.0;
    return std::pair{p, n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0};
  };
  for (const auto& [label, swapped] : tally.partner) {
    ClassFrequency c;
    c.label = label;
    c.swapped = swapped;
    c.count = count_of(label);
    std::tie(c.frequency, c.standard_error) = freq(c.count);
    std::tie(c.swapped_frequency, c.swapped_standard_error) = freq(count_of(swapped));
    const double se = std::hypot(c.standard_error, c.swapped_standard_error);
    const double diff = c.frequency - c.swapped_frequency;
    c.z_swap = diff == 0.0 ? 0.0 : (se > 0.0 ? diff / se : std::copysign(INFINITY, diff));
    report.max_abs_z_swap = std::max(report.max_abs_z_swap, std::abs(c.z_swap));
    report.classes.push_back(std::move(c));
  }
  return report;
}

ReversibilityReport reversibility_check(const NetworkSource& source, const RootLaw& root_law,
                                        const PairClassifier& classifier, std::uint64_t samples, Rng& rng) {
  return summarize_pairs(tally_pairs(source, root_law, classifier, samples, rng));
}

std::map<std::string, Rational> example52_exact_class_probabilities(const Example52Source& source, int max_n) {
  using S = Example52Source;
  std::map<std::string, Rational> out;
  const Rational path1 = S::path_conductance(1);
  const Rational c_o = 3 * source.tree_conductance() + path1;
  out["o>o1"] = example52_root_probability(S::tree_vertex(0)) * path1 / c_o;
  out["o>o'"] = example52_root_probability(S::tree_vertex(0)) * 3 * source.tree_conductance() / c_o;
  for (int n = 1; n <= max_n + 1; ++n) {
    const auto un = static_cast<std::uint64_t>(n);
    const Rational back = S::path_conductance(un);
    const Rational forward = S::path_conductance(un + 1);
    const Rational c = back + forward;
    const Rational pr = example52_root_probability(S::path_vertex(0, un));
    const std::string self = "o" + std::to_string(n);
    const std::string below = n == 1 ? std::string("o") : "o" + std::to_string(n - 1);
    out[self + ">" + below] = pr * back / c;
    out[self + ">o" + std::to_string(n + 1)] = pr * forward / c;
  }
  return out;
}

void PathMembershipTally::merge(const PathMembershipTally& other) {
  if (depth == 0) depth = other.depth;
  samples += other.samples;
  if (checked.size() < other.checked.size()) {
    checked.resize(other.checked.size());
    missing.resize(other.missing.size());
  }
  for (std::size_t j = 0; j < other.checked.size(); ++j) {
    checked[j] += other.checked[j];
    missing[j] += other.missing[j];
  }
}

std::uint64_t PathMembershipTally::violations() const {
  std::uint64_t total = 0;
  for (auto m : missing) total += m;
  return total;
}

PathMembershipTally example52_path_membership(const Example52Source& source, int depth, Rng& rng) {
  using S = Example52Source;
  const auto sample = sample_owusf_window(source, depth, rng);
  const auto& window = sample.window;
  PathMembershipTally tally;
  tally.depth = depth;
  tally.samples = 1;
  const std::size_t limit = depth >= 2 ? static_cast<std::size_t>(depth - 1) : 1;
  tally.checked.assign(limit, 0);
  tally.missing.assign(limit, 0);
  for (VertexId v : window.kept_vertices()) {
    const SourceVertex original = window.original_vertex[v];
    const std::uint64_t j = S::path_index(original);
    if (j == 0 || j >= limit) continue;
    // The j-th path edge is keyed by its far endpoint, which is kept.
    const auto e = window.contracted_edge(original);
    if (!e) throw std::logic_error("path edge missing from its window");
    ++tally.checked[j];
    if (!sample.forest.contains_edge(window.network, *e)) ++tally.missing[j];
  }
  return tally;
}

}  // namespace cyclebreak
