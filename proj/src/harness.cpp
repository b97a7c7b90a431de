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

#include "cyclebreak/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "cyclebreak/corpus.hpp"
#include "cyclebreak/ends.hpp"
#include "cyclebreak/oracle.hpp"
#include "cyclebreak/random_walk.hpp"
#include "cyclebreak/stats.hpp"
#include "cyclebreak/update.hpp"

namespace cyclebreak {

namespace fs = std::filesystem;

namespace {

const std::set<std::string, std::less<>> kOperations = {"sample-ust",    "sample-oust",  "dynamics-run",
                                                        "certify",       "three-ends",   "gw-ends-trend",
                                                        "reversibility"};

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

template <class T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    bad(std::string("parameter \"") + key + "\" has the wrong type");
  }
}

std::uint64_t get_count(const Json& obj, const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    bad(std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

Rational get_rational(const Json& obj, const char* key, const Rational& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  bad(std::string("\"") + key + "\" must be a rational string");
}

std::string fmt_double(double x) { return fmt::format("{}", x); }

std::string kind_of(const Json& source) {
  if (!source.is_object() || !source.contains("kind") || !source["kind"].is_string())
    bad("source descriptor needs a string \"kind\"");
  static const std::set<std::string, std::less<>> kinds = {
      "graph",         "k4",         "triangle", "box",       "corpus",
      "galton-watson", "augmented-galton-watson", "regular-tree", "lattice", "example52"};
  auto kind = source["kind"].get<std::string>();
  if (!kinds.count(kind)) bad("unknown source kind \"" + kind + "\"");
  return kind;
}

// --- finite targets ----------------------------------------------------------

struct Target {
  std::string id;
  WiredContraction contraction;
  VertexId root = 0;  // boundary if present, else a chosen vertex
};

Network finite_network(const Json& source, const fs::path& base_dir) {
  const std::string kind = kind_of(source);
  if (kind == "graph") return load_network(base_dir / get_or<std::string>(source, "path", ""));
  if (kind == "k4") return unit_k4();
  if (kind == "triangle") return weighted_triangle();
  if (kind == "box")
    return zd_box(static_cast<int>(get_count(source, "dimension", 2)), static_cast<int>(get_count(source, "side", 3)));
  bad("source kind \"" + kind + "\" is not a finite network");
}

VertexId vertex_by_label(const Network& net, const Json& label) {
  if (!label.is_number_integer()) bad("vertex ids must be integers");
  auto v = net.find_vertex(label.get<std::int64_t>());
  if (!v) bad("unknown vertex id " + label.dump());
  return *v;
}

bool is_infinite_kind(const std::string& kind) {
  return kind == "galton-watson" || kind == "augmented-galton-watson" || kind == "regular-tree" ||
         kind == "lattice" || kind == "example52";
}

std::vector<Target> targets(const ExperimentConfig& config, std::uint64_t seed) {
  const Json& src = config.source;
  const std::string kind = kind_of(src);
  std::vector<Target> out;
  if (kind == "corpus") {
    const std::string only = get_or<std::string>(src, "fixture", "");
    for (auto& f : builtin_corpus())
      if (only.empty() || f.id == only) out.push_back({f.id, std::move(f.contraction), 0});
    if (out.empty()) bad("no corpus fixture named \"" + only + "\"");
  } else if (is_infinite_kind(kind)) {
    const int depth = static_cast<int>(get_count(config.parameters, "depth", 4));
    const auto source = source_factory(src, depth)(seed);
    out.push_back({kind, truncate(*source, depth), 0});
  } else {
    Network base = finite_network(src, config.base_dir);
    std::vector<VertexId> keep;
    if (config.parameters.contains("keep")) {
      for (const auto& label : config.parameters["keep"]) keep.push_back(vertex_by_label(base, label));
    } else {
      for (VertexId v = 0; v < base.vertex_count(); ++v) keep.push_back(v);
    }
    out.push_back({kind, wired_contract(base, keep), 0});
  }
  for (auto& t : out) {
    if (t.contraction.has_boundary()) {
      t.root = t.contraction.boundary_vertex();
    } else if (config.parameters.contains("root")) {
      t.root = vertex_by_label(t.contraction.network, config.parameters["root"]);
    }
  }
  return out;
}

std::vector<VertexId> walk_order(const Network& net, const std::string& order, Rng& rng) {
  std::vector<VertexId> v(net.vertex_count());
  for (VertexId i = 0; i < v.size(); ++i) v[i] = i;
  if (order == "ascending") return v;
  if (order == "descending") {
    std::reverse(v.begin(), v.end());
    return v;
  }
  if (order == "random") {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    return v;
  }
  bad("order must be ascending, descending or random");
}

std::string edge_list(const Network& net, const std::vector<EdgeId>& edges) {
  std::string s;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(net.edge_label(edges[i]));
  }
  return s;
}

struct Output {
  fs::path dir;
  RunResult* result;

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir / name;
    write_file(p, content);
    result->files.push_back(p);
  }
};

// --- operations ----------------------------------------------------------------

void op_sample_ust(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                   RunResult& result) {
  const auto ts = targets(config, seed);
  if (ts.size() != 1) bad("sample-ust needs a single network");
  const Target& t = ts.front();
  const Network& net = t.contraction.network;
  const std::string order = get_or<std::string>(config.parameters, "order", "ascending");

  auto trees = parallel_map(config.replicas, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const auto o = walk_order(net, order, rng);
    return wilson_rooted(net, t.root, o, rng).unoriented_edges();
  });

  std::string csv = "replica,edges\n";
  std::map<std::vector<EdgeId>, std::uint64_t> counts;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    csv += fmt::format("{},{}\n", i, edge_list(net, trees[i]));
    ++counts[trees[i]];
  }
  out.write("samples.csv", csv);

  Json summary{{"operation", "sample-ust"}, {"replicas", config.replicas}, {"distinct_trees", counts.size()}};
  Json chi = nullptr;
  if (net.edge_count() <= kMaxEnumerationEdges) {
    const auto dist = enumerate_spanning_trees(net, t.root);
    std::vector<std::uint64_t> observed(dist.trees.size(), 0);
    std::uint64_t outside = 0;
    for (const auto& [edges, n] : counts) {
      if (auto idx = dist.index_of(edges)) observed[*idx] += n;
      else outside += n;
    }
    const auto p = dist.probabilities();
    std::vector<double> expected;
    for (double q : p) expected.push_back(q * static_cast<double>(config.replicas));
    const bool enough = std::all_of(expected.begin(), expected.end(), [](double e) { return e >= 5.0; });
    if (outside == 0 && enough && dist.trees.size() > 1) {
      const auto r = chi_square_gof(observed, expected);
      const double alpha = get_or<double>(config.parameters, "alpha", 1e-3);
      chi = Json{{"statistic", r.statistic}, {"dof", r.degrees_of_freedom}, {"p_value", r.p_value}, {"alpha", alpha},
                 {"passed", r.p_value > alpha}};
      if (r.p_value <= alpha) result.exit_code = kExitStatistical;
    } else if (outside > 0) {
      chi = Json{{"passed", false}, {"reason", "sample outside the spanning tree set"}};
      result.exit_code = kExitStatistical;
    }
  }
  summary["chi_square"] = chi;
  out.write("summary.json", summary.dump(2) + "\n");
  result.summary = fmt::format("sampled {} trees, {} distinct", config.replicas, counts.size());
}

void op_sample_oust(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                    RunResult& result) {
  const auto ts = targets(config, seed);
  if (ts.size() != 1) bad("sample-oust needs a single network");
  const Target& t = ts.front();
  const Network& net = t.contraction.network;
  auto forests = parallel_map(config.replicas, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    return wilson_rooted(net, t.root, {}, rng);
  });
  std::string lines;
  for (std::size_t i = 0; i < forests.size(); ++i) {
    Json j{{"replica", i}};
    j.update(forest_to_json(net, forests[i]));
    lines += j.dump() + "\n";
  }
  out.write("forests.jsonl", lines);
  out.write("network.json", network_to_json(net).dump(2) + "\n");
  result.summary = fmt::format("sampled {} oriented forests on {} vertices", forests.size(), net.vertex_count());
}

void op_dynamics(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                 RunResult& result) {
  const auto ts = targets(config, seed);
  if (ts.size() != 1) bad("dynamics-run needs a single network");
  const Target& t = ts.front();
  const Network& net = t.contraction.network;
  const std::uint64_t steps = get_count(config.parameters, "steps", 1000);
  std::optional<VertexId> fixed;
  if (config.parameters.contains("vertex")) fixed = vertex_by_label(net, config.parameters["vertex"]);
  if (fixed && *fixed == t.root) bad("dynamics vertex is the root");
  std::vector<VertexId> movable;
  for (VertexId v = 0; v < net.vertex_count(); ++v)
    if (v != t.root) movable.push_back(v);
  if (movable.empty()) bad("network has no non-root vertex");

  struct Run {
    std::string trace;
    Json final;
  };
  auto runs = parallel_map(config.replicas, workers, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    OrientedForest f = wilson_rooted(net, t.root, {}, rng);
    std::string trace;
    for (std::uint64_t s = 0; s < steps; ++s) {
      const VertexId v = fixed ? *fixed : movable[rng.below(movable.size())];
      trace += trace_record(net, s, dynamics_step_traced(net, f, v, rng)).dump() + "\n";
    }
    if (auto problem = f.validate(net)) throw std::logic_error("dynamics produced an invalid forest: " + *problem);
    Json final{{"replica", i}};
    final.update(forest_to_json(net, f));
    return Run{std::move(trace), std::move(final)};
  });
  std::string finals;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.write(fmt::format("traces/replica-{:05}.jsonl", i), runs[i].trace);
    finals += runs[i].final.dump() + "\n";
  }
  out.write("final_forests.jsonl", finals);
  result.summary = fmt::format("{} replicas of {} dynamics steps", runs.size(), steps);
}

void op_certify(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                RunResult& result) {
  const auto ts = targets(config, seed);
  const std::uint64_t sampled = get_count(config.parameters, "sampled_events", 10'000);
  struct Cert {
    Json stationarity = Json::array();
    Json tolerance = Json::array();
    bool passed = true;
  };
  auto certs = parallel_map(ts.size(), workers, [&](std::size_t i) {
    const Target& t = ts[i];
    const auto& c = t.contraction;
    const Network& net = c.network;
    if (!c.has_boundary()) bad("fixture " + t.id + " has no boundary vertex");
    Cert cert;
    const auto dist = enumerate_spanning_trees(net, c.boundary_vertex());
    Rng rng(derive_seed(seed, i));
    for (VertexId v : c.kept_vertices()) {
      const auto report = certify_stationarity(build_kernel(c, v), dist);
      Json j = certification_to_json(t.id, report);
      j["vertex"] = net.vertex_label(v);
      cert.stationarity.push_back(std::move(j));
      cert.passed = cert.passed && report.passed;
      std::set<OrientedEdge> seen;
      for (const auto& e : net.out_edges(v)) {
        if (!seen.insert(e).second) continue;
        const auto tol = certify_update_tolerance(c, dist, e, rng, sampled);
        cert.tolerance.push_back(tolerance_to_json(t.id, net, e, tol));
        cert.passed = cert.passed && tol.passed;
      }
    }
    return cert;
  });
  Json stationarity = Json::array(), tolerance = Json::array();
  bool passed = true;
  for (auto& c : certs) {
    for (auto& j : c.stationarity) stationarity.push_back(std::move(j));
    for (auto& j : c.tolerance) tolerance.push_back(std::move(j));
    passed = passed && c.passed;
  }
  out.write("certification.json", Json{{"passed", passed}, {"reports", stationarity}}.dump(2) + "\n");
  out.write("tolerance.json", Json{{"passed", passed}, {"reports", tolerance}}.dump(2) + "\n");
  if (!passed) result.exit_code = kExitCertification;
  result.summary = fmt::format("{} fixtures, {} stationarity and {} tolerance reports, {}", ts.size(),
                               stationarity.size(), tolerance.size(), passed ? "all passed" : "FAILED");
}

void op_three_ends(const ExperimentConfig&, std::uint64_t, unsigned, Output& out, RunResult& result) {
  Json reports = Json::array();
  bool passed = true;
  for (const auto& [fixture, expect_valid] :
       {std::pair{canonical_three_ends_fixture(), true}, std::pair{two_step_three_ends_fixture(), true},
        std::pair{degenerate_three_ends_fixture(), false}}) {
    const auto report = three_ends_experiment(fixture);
    std::vector<ComponentSummary> comps;
    if (report.preconditions_met) {
      const auto path = update_along_path(fixture.window.network, fixture.forest, fixture.gamma);
      comps = summarize_components(fixture.window, path.forest, fixture.radius);
    }
    reports.push_back(three_ends_to_json(report, comps, fixture.window.network));
    passed = passed && (expect_valid ? report.passed : !report.preconditions_met);
  }
  out.write("three_ends.json", Json{{"passed", passed}, {"reports", reports}}.dump(2) + "\n");
  if (!passed) result.exit_code = kExitCertification;
  result.summary = passed ? "three-ends fixtures behave as constructed" : "three-ends construction FAILED";
}

void op_gw_trend(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                 RunResult& result) {
  std::vector<int> depths = get_or<std::vector<int>>(config.parameters, "depths", {4, 6, 8, 10});
  if (depths.empty()) bad("depths must be nonempty");
  for (int d : depths)
    if (d < 2) bad("depths must be at least 2");
  const int max_depth = *std::max_element(depths.begin(), depths.end());
  const auto trend = gw_ends_trend(source_factory(config.source, max_depth), depths, config.replicas, seed, workers);

  std::string csv = "depth,replicas,two_ray_count,fraction,std_error\n";
  for (const auto& r : trend.rows)
    csv += fmt::format("{},{},{},{},{}\n", r.depth, r.replicas, r.two_ray_count, fmt_double(r.fraction),
                       fmt_double(r.std_error));
  out.write("ends_trend.csv", csv);

  std::string per = "replica,depth,rays,two_rays\n";
  for (std::size_t i = 0; i < trend.rays.size(); ++i)
    for (std::size_t k = 0; k < depths.size(); ++k)
      per += fmt::format("{},{},{},{}\n", i, depths[k], trend.rays[i][k], trend.rays[i][k] >= 2 ? 1 : 0);
  out.write("replicas.csv", per);
  out.write("trend.json", Json{{"nonincreasing", trend.nonincreasing}}.dump(2) + "\n");
  if (get_or<bool>(config.parameters, "check", true) && !trend.nonincreasing) result.exit_code = kExitStatistical;
  result.summary = fmt::format("two-ray fractions over {} depths; nonincreasing: {}", depths.size(),
                               trend.nonincreasing ? "yes" : "no");
}

void op_reversibility(const ExperimentConfig& config, std::uint64_t seed, unsigned workers, Output& out,
                      RunResult& result) {
  if (kind_of(config.source) != "example52") bad("reversibility is implemented for the example52 source");
  const Example52Source source(get_rational(config.source, "tree_conductance", Rational(1)));
  const std::string law = get_or<std::string>(config.parameters, "root_law", "example52");
  RootLaw root_law;
  if (law == "example52") root_law = example52_root;
  else if (law == "origin") root_law = [](Rng&) { return Example52Source::tree_vertex(0); };
  else bad("root_law must be example52 or origin");

  const auto res = example52_experiment(
      source, root_law, get_count(config.parameters, "samples", 1'000'000), config.replicas,
      static_cast<int>(get_count(config.parameters, "max_n", 5)), get_count(config.parameters, "window_samples", 1000),
      static_cast<int>(get_count(config.parameters, "depth", 8)), seed, workers);

  std::string csv =
      "label,swapped,count,frequency,standard_error,swapped_frequency,swapped_standard_error,z_swap,network_exact,quoted\n";
  for (const auto& c : res.report.classes) {
    auto exact = res.network_exact.find(c.label);
    auto quoted = res.quoted.find(c.label);
    csv += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", c.label, c.swapped, c.count, fmt_double(c.frequency),
                       fmt_double(c.standard_error), fmt_double(c.swapped_frequency),
                       fmt_double(c.swapped_standard_error), fmt_double(c.z_swap),
                       exact == res.network_exact.end() ? "" : to_string(exact->second),
                       quoted == res.quoted.end() ? "" : to_string(quoted->second));
  }
  out.write("reversibility.csv", csv);

  std::string mem = "index,checked,missing\n";
  for (std::size_t j = 1; j < res.membership.checked.size(); ++j)
    mem += fmt::format("{},{},{}\n", j, res.membership.checked[j], res.membership.missing[j]);
  out.write("membership.csv", mem);

  const bool ok = res.reversible && res.mismatches.empty() && res.membership.violations() == 0;
  out.write("summary.json", Json{{"samples", res.report.samples},
                                 {"max_abs_z_swap", res.report.max_abs_z_swap},
                                 {"reversible", res.reversible},
                                 {"quoted_mismatches", res.mismatches},
                                 {"window_samples", res.membership.samples},
                                 {"membership_violations", res.membership.violations()},
                                 {"passed", ok}}
                                .dump(2) +
                                "\n");
  if (!ok) result.exit_code = kExitStatistical;
  result.summary = fmt::format("max |z_swap| {:.3f}; {} quoted mismatches; {} membership violations",
                               res.report.max_abs_z_swap, res.mismatches.size(), res.membership.violations());
}

}  // namespace

// --- config --------------------------------------------------------------------

ExperimentConfig parse_config(std::string_view text, const fs::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    bad(std::string("config is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) bad("config must be a JSON object");
  ExperimentConfig c;
  c.base_dir = base_dir;
  if (!doc.contains("operation") || !doc["operation"].is_string()) bad("config needs a string \"operation\"");
  c.operation = doc["operation"].get<std::string>();
  if (!kOperations.count(c.operation)) bad("unknown operation \"" + c.operation + "\"");
  if (doc.contains("seed")) c.seed = get_count(doc, "seed", 0);
  c.replicas = get_count(doc, "replicas", 1);
  if (c.replicas < 1) bad("replicas must be at least 1");
  if (doc.contains("source")) {
    c.source = doc["source"];
    kind_of(c.source);
    if (c.source.contains("path")) {
      if (!c.source["path"].is_string()) bad("source path must be a string");
      const fs::path p = base_dir / c.source["path"].get<std::string>();
      if (!fs::exists(p)) bad("referenced file does not exist: " + p.string());
    }
  } else if (c.operation != "three-ends") {
    bad("config needs a \"source\"");
  }
  if (doc.contains("parameters")) {
    if (!doc["parameters"].is_object()) bad("\"parameters\" must be an object");
    c.parameters = doc["parameters"];
  }
  c.output = get_or<std::string>(doc, "output", c.operation);
  if (c.output.empty() || fs::path(c.output).is_absolute()) bad("output must be a relative path");
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& err) {
    bad(err.what());
  }
  return parse_config(text, path.parent_path());
}

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  const auto seed = options.seed ? options.seed : config.seed;
  if (!seed) bad("no seed given in the config or on the command line");
  RunResult result;
  Output out{options.out_dir / config.output, &result};
  const unsigned workers = std::max(1u, options.workers);
  using Op = void (*)(const ExperimentConfig&, std::uint64_t, unsigned, Output&, RunResult&);
  static const std::map<std::string, Op, std::less<>> ops = {
      {"sample-ust", op_sample_ust}, {"sample-oust", op_sample_oust}, {"dynamics-run", op_dynamics},
      {"certify", op_certify},       {"three-ends", op_three_ends},   {"gw-ends-trend", op_gw_trend},
      {"reversibility", op_reversibility},
  };
  ops.at(config.operation)(config, *seed, workers, out, result);
  return result;
}

RunResult run_guarded(const ExperimentConfig& config, const RunOptions& options) {
  RunResult failed;
  try {
    return run(config, options);
  } catch (const ConfigError& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const IoError& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const Json::exception& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const RationalParseError& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const NetworkError& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const ContractionError& e) {
    failed = {kExitConfig, e.what(), {}};
  } catch (const GeneratorError& e) {
    failed = {e.code() == GeneratorError::Code::kRejectionBudget ? kExitBudget : kExitConfig, e.what(), {}};
  } catch (const StepBudgetExceeded& e) {
    failed = {kExitBudget, e.what(), {}};
  } catch (const OracleError& e) {
    failed = {e.code() == OracleError::Code::kBudgetExceeded ? kExitBudget : kExitInternal, e.what(), {}};
  } catch (const LowExpectedCount& e) {
    failed = {kExitStatistical, e.what(), {}};
  } catch (const std::exception& e) {
    failed = {kExitInternal, e.what(), {}};
  }
  return failed;
}

// --- shared experiments ------------------------------------------------------------

SourceFactory source_factory(const Json& descriptor, int max_depth) {
  const std::string kind = kind_of(descriptor);
  auto offspring = [&] {
    if (!descriptor.contains("offspring") || !descriptor["offspring"].is_array())
      bad("galton-watson source needs an \"offspring\" array");
    std::vector<Rational> p;
    for (const auto& x : descriptor["offspring"]) {
      if (x.is_string()) p.push_back(parse_rational(x.get<std::string>()));
      else if (x.is_number_integer()) p.push_back(Rational(x.get<long>()));
      else bad("offspring probabilities must be rational strings");
    }
    OffspringDistribution dist(std::move(p));
    if (!dist.supercritical())
      throw GeneratorError(GeneratorError::Code::kNotSupercritical, "offspring law is not supercritical");
    return dist;
  };
  const auto survive = static_cast<std::uint32_t>(max_depth + 1);
  if (kind == "galton-watson") {
    auto dist = offspring();
    return [dist, survive](std::uint64_t seed) -> std::shared_ptr<const NetworkSource> {
      return gw_source(dist, seed, survive);
    };
  }
  if (kind == "augmented-galton-watson") {
    auto dist = offspring();
    return [dist, survive](std::uint64_t seed) -> std::shared_ptr<const NetworkSource> {
      return augmented_gw_source(dist, seed, survive);
    };
  }
  if (kind == "regular-tree") {
    auto tree = regular_tree(static_cast<std::uint32_t>(get_count(descriptor, "degree", 3)));
    return [tree](std::uint64_t) -> std::shared_ptr<const NetworkSource> { return tree; };
  }
  if (kind == "lattice") {
    auto lattice = lattice_source(static_cast<int>(get_count(descriptor, "dimension", 1)));
    return [lattice](std::uint64_t) -> std::shared_ptr<const NetworkSource> { return lattice; };
  }
  if (kind == "example52") {
    auto net = example52_source(get_rational(descriptor, "tree_conductance", Rational(1)));
    return [net](std::uint64_t) -> std::shared_ptr<const NetworkSource> { return net; };
  }
  bad("source kind \"" + kind + "\" is not an infinite source");
}

WindowSample ends_window(const NetworkSource& source, int depth, Rng& rng) {
  if (!source.recurrent()) return sample_owusf_window(source, depth, rng);
  WindowSample sample{truncate_free(source, depth), {}};
  sample.forest = wilson_rooted(sample.window.network, *sample.window.root, {}, rng);
  return sample;
}

EndsTrend gw_ends_trend(const SourceFactory& factory, const std::vector<int>& depths, std::uint64_t replicas,
                        std::uint64_t seed, unsigned workers) {
  EndsTrend trend;
  trend.rays = parallel_map(replicas, workers, [&](std::size_t i) {
    const std::uint64_t replica_seed = derive_seed(seed, i);
    const auto source = factory(replica_seed);
    std::vector<int> rays;
    for (int d : depths) {
      Rng rng(derive_seed(replica_seed, static_cast<std::uint64_t>(d)));
      const auto sample = ends_window(*source, d, rng);
      rays.push_back(boundary_rays_of_vertex(sample.window, sample.forest, *sample.window.root, d / 2));
    }
    return rays;
  });
  for (std::size_t k = 0; k < depths.size(); ++k) {
    TrendRow row;
    row.depth = depths[k];
    row.replicas = replicas;
    for (const auto& r : trend.rays) row.two_ray_count += r[k] >= 2 ? 1 : 0;
    const auto p = proportion(row.two_ray_count, replicas);
    row.fraction = p.estimate;
    row.std_error = p.standard_error;
    trend.rows.push_back(row);
  }
  for (std::size_t k = 1; k < trend.rows.size(); ++k) {
    const auto& a = trend.rows[k - 1];
    const auto& b = trend.rows[k];
    if (b.fraction - a.fraction > 2.0 * std::hypot(a.std_error, b.std_error)) trend.nonincreasing = false;
  }
  return trend;
}

Example52Result example52_experiment(const Example52Source& source, const RootLaw& root_law, std::uint64_t samples,
                                     std::uint64_t chunks, int max_n, std::uint64_t window_samples, int depth,
                                     std::uint64_t seed, unsigned workers) {
  Example52Result res;
  chunks = std::max<std::uint64_t>(chunks, 1);
  const std::uint64_t pair_stream = derive_seed(seed, 0);
  const std::uint64_t window_stream = derive_seed(seed, 1);
  const auto classifier = example52_classifier();
  const auto tallies = parallel_map(chunks, workers, [&](std::size_t i) {
    const std::uint64_t n = samples / chunks + (i < samples % chunks ? 1 : 0);
    Rng rng(derive_seed(pair_stream, i));
    return tally_pairs(source, root_law, classifier, n, rng);
  });
  PairTally total;
  for (const auto& t : tallies) total.merge(t);
  res.report = summarize_pairs(total);
  res.reversible = res.report.max_abs_z_swap <= 3.0;
  res.network_exact = example52_exact_class_probabilities(source, max_n);

  auto pow2 = [](int n) { return Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(n)); };
  for (int n = 1; n <= max_n; ++n) {
    const Rational q = 1 / (7 * pow2(n));
    res.quoted[fmt::format("o{}>o{}", n, n + 1)] = q;
    res.quoted[fmt::format("o{}>o{}", n + 1, n)] = q;
  }
  res.quoted["o>o1"] = Rational(1, 7);
  res.quoted["o1>o"] = Rational(1, 7);
  const double N = static_cast<double>(std::max<std::uint64_t>(samples, 1));
  for (const auto& [label, q] : res.quoted) {
    const double p = q.get_d();
    const ClassFrequency* c = res.report.find(label);
    const double freq = c ? c->frequency : 0.0;
    // Standard error under the quoted value.
    const double se = std::sqrt(p * (1.0 - p) / N);
    if (std::abs(freq - p) > 3.0 * se) res.mismatches.push_back(label);
  }

  if (window_samples > 0) {
    const auto parts = parallel_map(window_samples, workers, [&](std::size_t i) {
      Rng rng(derive_seed(window_stream, i));
      return example52_path_membership(source, depth, rng);
    });
    for (const auto& p : parts) res.membership.merge(p);
  }
  return res;
}

}  // namespace cyclebreak
