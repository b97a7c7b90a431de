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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclebreak/network.hpp"
#include "cyclebreak/rational.hpp"
#include "cyclebreak/rng.hpp"
#include "cyclebreak/source.hpp"

namespace cyclebreak {

class GeneratorError : public std::invalid_argument {
 public:
  enum class Code { kInvalidDistribution, kNotSupercritical, kRejectionBudget, kInvalidParameter };

  GeneratorError(Code code, const std::string& what) : std::invalid_argument(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Finite-support offspring law p_0..p_K with exact rational weights.
class OffspringDistribution {
 public:
  /// Throws GeneratorError unless the weights are nonnegative and sum to 1.
  explicit OffspringDistribution(std::vector<Rational> probabilities);

  const std::vector<Rational>& probabilities() const { return p_; }
  std::size_t max_offspring() const { return p_.size() - 1; }
  Rational mean() const;
  bool supercritical() const { return mean() > 1; }
  /// Inverse-CDF draw from a uniform in [0, 1).
  std::uint32_t sample(double u) const;

 private:
  std::vector<Rational> p_;
  std::vector<double> cumulative_;
};

/// A rooted tree grown lazily, one full generation at a time, with vertex
/// ids assigned in breadth-first order. Child counts are a pure function of
/// a per-vertex hash, so the realization does not depend on query order.
class LazyTree {
 public:
  using ChildCount = std::function<std::uint32_t(std::uint64_t hash, std::uint32_t depth)>;

  struct Node {
    std::uint64_t parent;
    std::uint64_t hash;
    std::uint32_t depth;
    std::uint64_t first_child;
    std::uint32_t children;
  };

  LazyTree(ChildCount count, std::uint64_t root_hash);

  /// Node `id` with its children materialized. Throws for ids not yet
  /// generated.
  Node node(std::uint64_t id) const;

  static std::uint64_t child_hash(std::uint64_t hash, std::uint32_t index) { return derive_seed(hash, index); }

  /// Whether some lineage reaches `depth`, found by depth-first search on
  /// hashes without materializing generations.
  bool reaches_depth(std::uint32_t depth) const;

 private:
  void grow_to(std::uint32_t depth) const;

  ChildCount count_;
  std::uint64_t root_hash_;
  mutable std::mutex mutex_;
  mutable std::vector<Node> nodes_;
  // level_start_[d] is the first id at depth d; the last entry is the end
  // of the deepest generation generated so far.
  mutable std::vector<std::uint64_t> level_start_;
};

/// Galton-Watson tree with unit conductances. Realizations are redrawn
/// (seeded by attempt number) until one reaches `survive_depth`.
class GaltonWatsonSource : public NetworkSource {
 public:
  static constexpr std::size_t kMaxAttempts = 100'000;

  GaltonWatsonSource(OffspringDistribution dist, std::uint64_t seed, std::uint32_t survive_depth);

  SourceVertex root() const override { return 0; }
  std::vector<SourceEdge> neighbors(SourceVertex v) const override;
  std::string name() const override { return "galton-watson"; }

  std::size_t attempts() const { return attempts_; }
  std::uint64_t tree_seed() const { return tree_seed_; }
  const LazyTree& tree() const { return *tree_; }

 private:
  OffspringDistribution dist_;
  std::size_t attempts_ = 0;
  std::uint64_t tree_seed_ = 0;
  std::unique_ptr<LazyTree> tree_;
};

/// Throws GeneratorError(kNotSupercritical) unless the mean exceeds 1.
std::shared_ptr<const GaltonWatsonSource> gw_source(const OffspringDistribution& dist, std::uint64_t seed,
                                                    std::uint32_t survive_depth);

/// Two independent Galton-Watson trees whose roots are joined by a unit
/// edge, rooted at the first tree's root. The first tree is conditioned to
/// reach `survive_depth`.
class AugmentedGaltonWatsonSource : public NetworkSource {
 public:
  static constexpr std::uint64_t kSecondTree = std::uint64_t{1} << 62;

  AugmentedGaltonWatsonSource(const OffspringDistribution& dist, std::uint64_t seed, std::uint32_t survive_depth);

  SourceVertex root() const override { return 0; }
  std::vector<SourceEdge> neighbors(SourceVertex v) const override;
  std::string name() const override { return "augmented-galton-watson"; }

 private:
  GaltonWatsonSource first_;
  GaltonWatsonSource second_;
};

std::shared_ptr<const AugmentedGaltonWatsonSource> augmented_gw_source(const OffspringDistribution& dist,
                                                                       std::uint64_t seed,
                                                                       std::uint32_t survive_depth = 0);

/// Regular tree: every vertex has `degree` neighbors.
class RegularTreeSource : public NetworkSource {
 public:
  explicit RegularTreeSource(std::uint32_t degree);

  SourceVertex root() const override { return 0; }
  std::vector<SourceEdge> neighbors(SourceVertex v) const override;
  std::string name() const override { return "regular-tree"; }

 private:
  std::uint32_t degree_;
  LazyTree tree_;
};

std::shared_ptr<const RegularTreeSource> regular_tree(std::uint32_t degree);

/// Unit-conductance integer lattice Z^d (d <= 3), rooted at the origin.
class LatticeSource : public NetworkSource {
 public:
  static constexpr int kBits = 20;

  explicit LatticeSource(int dimension);

  SourceVertex root() const override { return encode(std::vector<long>(static_cast<std::size_t>(dim_), 0)); }
  std::vector<SourceEdge> neighbors(SourceVertex v) const override;
  bool recurrent() const override { return dim_ <= 2; }
  std::string name() const override { return "lattice"; }

  SourceVertex encode(const std::vector<long>& x) const;
  std::vector<long> decode(SourceVertex v) const;

 private:
  int dim_;
};

std::shared_ptr<const LatticeSource> lattice_source(int dimension);

/// Finite box {0..side-1}^d with unit conductances; vertices in
/// lexicographic order. A wired version is wired_contract(box, inner).
Network zd_box(int dimension, int side);

/// The 3-regular tree with an infinite path attached at every vertex; the
/// n-th edge of each path has conductance 2^{-n-1}. Tree vertex t is
/// encoded as t << kPathBits and the n-th vertex of its path as
/// (t << kPathBits) | n. `tree_conductance` is 1 by default.
class Example52Source : public NetworkSource {
 public:
  static constexpr int kPathBits = 24;

  explicit Example52Source(Rational tree_conductance = Rational(1));

  SourceVertex root() const override { return 0; }
  std::vector<SourceEdge> neighbors(SourceVertex v) const override;
  std::string name() const override { return "example52"; }

  static SourceVertex tree_vertex(std::uint64_t t) { return t << kPathBits; }
  static SourceVertex path_vertex(std::uint64_t t, std::uint64_t n) { return (t << kPathBits) | n; }
  static std::uint64_t tree_part(SourceVertex v) { return v >> kPathBits; }
  static std::uint64_t path_index(SourceVertex v) { return v & ((std::uint64_t{1} << kPathBits) - 1); }
  /// Conductance of the n-th path edge, 2^{-n-1}.
  static Rational path_conductance(std::uint64_t n);

  const Rational& tree_conductance() const { return tree_c_; }

 private:
  Rational tree_c_;
  LazyTree tree_;
};

std::shared_ptr<const Example52Source> example52_source(Rational tree_conductance = Rational(1));

/// Root law: o with probability 4/7, the n-th vertex of o's path with
/// probability 3/(7 * 2^n).
SourceVertex example52_root(Rng& rng);
/// Exact probability of each root under that law.
Rational example52_root_probability(SourceVertex v);

// ---------------------------------------------------------------------------
// Reversibility of a random rooted network, one walk step at a time.

/// Isomorphism class of a doubly-rooted network and the class of its swap.
struct PairClass {
  std::string label;
  std::string swapped;
};
using PairClassifier = std::function<std::optional<PairClass>(SourceVertex root, SourceVertex step)>;
using RootLaw = std::function<SourceVertex(Rng&)>;

class ClassifierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classes: "o>o1", "o1>o", "o>o'", "o_n>o_n+1" and "o_n+1>o_n" (with n
/// written out, e.g. "o2>o3").
PairClassifier example52_classifier();

struct ClassFrequency {
  std::string label;
  std::string swapped;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
  double swapped_frequency = 0.0;
  double swapped_standard_error = 0.0;
  /// (frequency - swapped_frequency) in combined standard errors.
  double z_swap = 0.0;
};

struct ReversibilityReport {
  std::uint64_t samples = 0;
  std::vector<ClassFrequency> classes;  // sorted by label
  double max_abs_z_swap = 0.0;

  const ClassFrequency* find(const std::string& label) const;
};

/// Raw class counts; tallies from independent streams can be merged.
struct PairTally {
  std::uint64_t samples = 0;
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, std::string> partner;

  void merge(const PairTally& other);
};

/// Draws `samples` roots and takes one conductance-walk step from each.
PairTally tally_pairs(const NetworkSource& source, const RootLaw& root_law, const PairClassifier& classifier,
                      std::uint64_t samples, Rng& rng);
ReversibilityReport summarize_pairs(const PairTally& tally);

/// tally_pairs followed by summarize_pairs.
ReversibilityReport reversibility_check(const NetworkSource& source, const RootLaw& root_law,
                                        const PairClassifier& classifier, std::uint64_t samples, Rng& rng);

/// Exact class probabilities implied by the Example52 network and root
/// law, for paths up to index `max_n`.
std::map<std::string, Rational> example52_exact_class_probabilities(const Example52Source& source, int max_n);

/// Membership of added-path edges in sampled window forests. Index j counts
/// the j-th path edge (far endpoint at distance j from the tree); only edges
/// with j < depth - 1 and both endpoints in the window are checked.
struct PathMembershipTally {
  int depth = 0;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> checked;  // by j, index 0 unused
  std::vector<std::uint64_t> missing;

  void merge(const PathMembershipTally& other);
  std::uint64_t violations() const;
};

/// One wired window forest at `depth` around the source root.
PathMembershipTally example52_path_membership(const Example52Source& source, int depth, Rng& rng);

}  // namespace cyclebreak
