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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cyclebreak/corpus.hpp"
#include "cyclebreak/harness.hpp"
#include "cyclebreak/io.hpp"
#include "cyclebreak/update.hpp"
#include "cyclebreak/wilson.hpp"

using namespace cyclebreak;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cyclebreak_test_" + name);
  fs::remove_all(p);
  return p;
}

RunResult run_text(const std::string& text, const fs::path& out, unsigned workers = 1,
                   std::optional<std::uint64_t> seed = std::nullopt) {
  return run_guarded(parse_config(text), RunOptions{seed, workers, out});
}

std::vector<std::string> csv_column(const std::string& csv, std::size_t column) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    for (std::size_t i = 0; i <= column; ++i) std::getline(cells, cell, ',');
    out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST_SUITE("cli-harness") {

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_config("{\"operation\": "), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"seed\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"operation\": \"fly\", \"seed\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"operation\": \"certify\", \"seed\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"operation\": \"certify\", \"source\": {\"kind\": \"nope\"}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"operation\": \"sample-ust\", \"source\": {\"kind\": \"graph\", \"path\": \"missing.json\"}}"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("{\"operation\": \"three-ends\", \"output\": \"/abs\"}"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("a missing seed is a config error") {
  const auto out = scratch("noseed");
  const auto r = run_text("{\"operation\": \"three-ends\"}", out);
  CHECK(r.exit_code == kExitConfig);
  CHECK(run_text("{\"operation\": \"three-ends\"}", out, 1, 5).exit_code == kExitOk);
  fs::remove_all(out);
}

TEST_CASE("a disconnected graph file is a config error") {
  const auto dir = scratch("disconnected");
  write_file(dir / "g.json",
             R"({"vertices": [0, 1, 2], "edges": [{"id": 0, "u": 0, "v": 1, "c": "1"}]})");
  write_file(dir / "c.json",
             R"({"operation": "sample-ust", "seed": 1, "replicas": 10, "source": {"kind": "graph", "path": "g.json"}})");
  const auto r = run_guarded(load_config(dir / "c.json"), RunOptions{std::nullopt, 1, dir / "out"});
  CHECK(r.exit_code == kExitConfig);
  fs::remove_all(dir);
}

TEST_CASE("worker count from the environment") {
  ::setenv(kWorkersEnv, "3", 1);
  CHECK(default_workers() == 3);
  ::setenv(kWorkersEnv, "zero", 1);
  CHECK(default_workers() >= 1);
  ::unsetenv(kWorkersEnv);
  CHECK(default_workers() >= 1);
}

TEST_CASE("parallel_map keeps index order and reports the first failure") {
  const auto squares = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == i * i);
  std::atomic<int> calls{0};
  try {
    parallel_map(50, 4, [&](std::size_t i) -> int {
      ++calls;
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL("no exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
  CHECK(calls == 50);
}

TEST_CASE("outputs do not depend on the worker count") {
  const std::string configs[] = {
      R"({"operation": "gw-ends-trend", "seed": 21, "replicas": 24,
          "source": {"kind": "galton-watson", "offspring": ["1/4", "0", "3/4"]},
          "parameters": {"depths": [4, 6], "check": false}})",
      R"({"operation": "sample-ust", "seed": 22, "replicas": 2000, "source": {"kind": "k4"}})",
      R"({"operation": "dynamics-run", "seed": 23, "replicas": 6, "source": {"kind": "corpus", "fixture": "wheel"},
          "parameters": {"steps": 50}})",
  };
  for (const auto& text : configs) {
    const auto a = scratch("w1"), b = scratch("w4");
    const auto ra = run_text(text, a, 1);
    const auto rb = run_text(text, b, 4);
    CHECK(ra.exit_code == rb.exit_code);
    REQUIRE(ra.files.size() == rb.files.size());
    REQUIRE_FALSE(ra.files.empty());
    for (std::size_t i = 0; i < ra.files.size(); ++i) {
      CAPTURE(ra.files[i]);
      CHECK(fs::relative(ra.files[i], a) == fs::relative(rb.files[i], b));
      CHECK(read_file(ra.files[i]) == read_file(rb.files[i]));
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("seeds change the output") {
  const std::string text = R"({"operation": "sample-ust", "replicas": 200, "source": {"kind": "k4"}})";
  const auto a = scratch("s1"), b = scratch("s2");
  const auto ra = run_text(text, a, 1, 1);
  const auto rb = run_text(text, b, 1, 2);
  REQUIRE(ra.exit_code != kExitConfig);
  CHECK(read_file(a / "sample-ust" / "samples.csv") != read_file(b / "sample-ust" / "samples.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("certification of the corpus") {
  const auto out = scratch("certify");
  const auto r = run_text(R"({"operation": "certify", "seed": 4, "source": {"kind": "corpus", "fixture": "triangle"},
                              "parameters": {"sampled_events": 200}})",
                          out);
  CHECK(r.exit_code == kExitOk);
  const auto cert = Json::parse(read_file(out / "certify" / "certification.json"));
  CHECK(cert["passed"] == true);
  const auto& rows = cert["reports"];
  REQUIRE(rows.is_array());
  REQUIRE_FALSE(rows.empty());
  for (const auto& row : rows) {
    CHECK(row["max_stationarity_residual"] == "0");
    CHECK(row["max_detailed_balance_residual"] == "0");
    CHECK(row["passed"] == true);
  }
  fs::remove_all(out);
}

TEST_CASE("a single replica gives a zero-one fraction") {
  const auto out = scratch("single");
  const auto r = run_text(R"({"operation": "gw-ends-trend", "seed": 9, "replicas": 1,
                              "source": {"kind": "regular-tree", "degree": 3},
                              "parameters": {"depths": [4, 6, 8], "check": false}})",
                          out);
  CHECK(r.exit_code == kExitOk);
  const auto csv = read_file(out / "gw-ends-trend" / "ends_trend.csv");
  CHECK(csv.rfind("depth,replicas,two_ray_count,fraction,std_error\n", 0) == 0);
  for (const auto& f : csv_column(csv, 3)) CHECK((f == "0" || f == "1"));
  for (const auto& f : csv_column(csv, 1)) CHECK(f == "1");
  fs::remove_all(out);
}

TEST_CASE("the Z control keeps two rays") {
  const auto out = scratch("zcontrol");
  const auto r = run_text(R"({"operation": "gw-ends-trend", "seed": 10, "replicas": 30,
                              "source": {"kind": "lattice", "dimension": 1},
                              "parameters": {"depths": [4, 8]}})",
                          out);
  CHECK(r.exit_code == kExitOk);
  for (const auto& f : csv_column(read_file(out / "gw-ends-trend" / "ends_trend.csv"), 3)) CHECK(f == "1");
  fs::remove_all(out);
}

TEST_CASE("forest and trace records round-trip") {
  const Network k4 = unit_k4();
  Rng rng(5);
  const VertexId order[] = {1, 2, 3};
  const auto f = wilson_rooted(k4, 0, order, rng);
  const Json j = forest_to_json(k4, f);
  CHECK(forest_from_json(k4, Json::parse(j.dump())) == f);
  CHECK(j["roots"] == Json::array({0}));

  auto g = f;
  const auto step = dynamics_step_traced(k4, g, 2, rng);
  const Json rec = Json::parse(trace_record(k4, 17, step).dump());
  CHECK(rec["step"] == 17);
  CHECK(rec.contains("proposed"));
  CHECK(rec["case"] == std::string(to_string(step.kind)));
  CHECK(rec.contains("deleted"));
}

TEST_CASE("graph files round-trip") {
  const Network w = weighted_triangle();
  const Network back = parse_network(network_to_json(w).dump());
  REQUIRE(back.edge_count() == w.edge_count());
  for (EdgeId e = 0; e < w.edge_count(); ++e) {
    CHECK(back.conductance(e) == w.conductance(e));
    CHECK(back.first_endpoint(e) == w.first_endpoint(e));
    CHECK(back.second_endpoint(e) == w.second_endpoint(e));
  }
  auto third = make_network(2, {{0, 1, Rational(1, 3)}});
  CHECK(parse_network(network_to_json(third).dump()).conductance(0) == Rational(1, 3));
}

}  // TEST_SUITE
