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

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "cyclebreak/generators.hpp"
#include "cyclebreak/io.hpp"
#include "cyclebreak/source.hpp"
#include "cyclebreak/wilson.hpp"

namespace cyclebreak {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitBudget = 3,
  kExitCertification = 4,
  kExitStatistical = 5,
};

inline constexpr const char* kWorkersEnv = "CYCLEBREAK_WORKERS";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string operation;
  std::optional<std::uint64_t> seed;
  std::uint64_t replicas = 1;
  Json source = Json::object();      // {"kind": ..., kind-specific fields}
  Json parameters = Json::object();  // operation-specific
  std::string output;                // subdirectory of the output root
  std::filesystem::path base_dir;    // relative file paths resolve here
};

/// Throws ConfigError on malformed input or a missing referenced file.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  unsigned workers = 1;
  std::filesystem::path out_dir = ".";
};

struct RunResult {
  int exit_code = kExitOk;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// Runs one experiment. Failures of the experiment itself are reported
/// through the exit code; bad configs and budget overruns throw.
RunResult run(const ExperimentConfig& config, const RunOptions& options);

/// run() with every exception mapped to its exit code.
RunResult run_guarded(const ExperimentConfig& config, const RunOptions& options);

/// CYCLEBREAK_WORKERS if set to a positive integer, otherwise the hardware
/// concurrency (at least 1).
unsigned default_workers();

/// Evaluates fn(0..count-1) on up to `workers` threads and returns results
/// in index order. If any call throws, rethrows the lowest-index exception.
template <class F>
auto parallel_map(std::size_t count, unsigned workers, F&& fn) {
  using T = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------------------
// Experiments shared by the CLI and the acceptance suite.

using SourceFactory = std::function<std::shared_ptr<const NetworkSource>(std::uint64_t seed)>;

/// Builds a source factory from a config descriptor. Random sources use the
/// per-replica seed; `max_depth` sets the survival depth for Galton-Watson
/// sources (survive_depth = max_depth + 1).
SourceFactory source_factory(const Json& descriptor, int max_depth);

/// Wired window with a Wilson forest rooted at the boundary; for recurrent
/// sources, the free window with the forest rooted at the source root.
WindowSample ends_window(const NetworkSource& source, int depth, Rng& rng);

struct TrendRow {
  int depth = 0;
  std::uint64_t replicas = 0;
  std::uint64_t two_ray_count = 0;
  double fraction = 0.0;
  double std_error = 0.0;
};

struct EndsTrend {
  std::vector<TrendRow> rows;
  std::vector<std::vector<int>> rays;  // [replica][depth index]
  bool nonincreasing = true;           // up to two combined standard errors
};

/// Root-component boundary rays at r = D/2 for every depth and replica.
/// Replica i uses derive_seed(seed, i) for its source and
/// derive_seed(replica seed, D) for the window at depth D.
EndsTrend gw_ends_trend(const SourceFactory& factory, const std::vector<int>& depths, std::uint64_t replicas,
                        std::uint64_t seed, unsigned workers);

struct Example52Result {
  ReversibilityReport report;
  std::map<std::string, Rational> network_exact;  // implied by the network
  std::map<std::string, Rational> quoted;         // 1/(7*2^n) and 1/7
  std::vector<std::string> mismatches;            // quoted values off by > 3 SE
  PathMembershipTally membership;
  bool reversible = false;  // every |z_swap| <= 3
};

/// Reversibility tallies over `chunks` independent streams plus window
/// membership samples, both seeded from `seed`.
Example52Result example52_experiment(const Example52Source& source, const RootLaw& root_law, std::uint64_t samples,
                                     std::uint64_t chunks, int max_n, std::uint64_t window_samples, int depth,
                                     std::uint64_t seed, unsigned workers);

}  // namespace cyclebreak
