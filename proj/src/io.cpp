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

#include "cyclebreak/io.hpp"

#include <fstream>
#include <sstream>

namespace cyclebreak {

namespace {

[[noreturn]] void schema(const std::string& what) { throw IoError(IoError::Code::kSchema, what); }

std::int64_t integer_id(const Json& v, const char* what) {
  if (!v.is_number_integer()) schema(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

// Exact decimal when the denominator is 2^a 5^b, p/q otherwise.
std::string decimal_string(const Rational& q) {
  mpz_class den = q.get_den();
  unsigned twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return to_string(q);
  const unsigned places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = q.get_num() * scale / q.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

Json oriented_json(const Network& net, OrientedEdge e) {
  return Json{{"edge", net.edge_label(e.edge)}, {"direction", e.reversed ? "reversed" : "forward"}};
}

}  // namespace

Network network_from_json(const Json& doc) {
  if (!doc.is_object()) schema("graph document must be an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) schema("graph needs a \"vertices\" array");
  if (!doc.contains("edges") || !doc["edges"].is_array()) schema("graph needs an \"edges\" array");

  Network::Builder b;
  std::unordered_map<std::int64_t, VertexId> index;
  for (const auto& v : doc["vertices"]) {
    const auto id = integer_id(v, "vertex id");
    if (index.count(id)) throw IoError(IoError::Code::kDuplicateId, "duplicate vertex id " + std::to_string(id));
    index.emplace(id, b.add_vertex(id));
  }
  std::unordered_map<std::int64_t, bool> seen_edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_object()) schema("edge entries must be objects");
    for (const char* key : {"id", "u", "v", "c"})
      if (!e.contains(key)) schema(std::string("edge is missing \"") + key + "\"");
    const auto id = integer_id(e["id"], "edge id");
    if (!seen_edges.emplace(id, true).second)
      throw IoError(IoError::Code::kDuplicateId, "duplicate edge id " + std::to_string(id));
    auto endpoint = [&](const char* key) {
      const auto label = integer_id(e[key], "edge endpoint");
      auto it = index.find(label);
      if (it == index.end())
        throw IoError(IoError::Code::kUnknownId, "edge " + std::to_string(id) + " names unknown vertex " +
                                                      std::to_string(label));
      return it->second;
    };
    if (!e["c"].is_string()) schema("conductance of edge " + std::to_string(id) + " must be a decimal string");
    Rational c;
    try {
      c = parse_rational(e["c"].get<std::string>());
    } catch (const RationalParseError& err) {
      schema(err.what());
    }
    if (sgn(c) <= 0)
      throw IoError(IoError::Code::kNonPositiveConductance,
                    "edge " + std::to_string(id) + " has conductance " + to_string(c) + " <= 0");
    const VertexId u = endpoint("u");
    const VertexId v = endpoint("v");
    b.add_edge(u, v, c, id);
  }
  try {
    return std::move(b).build();
  } catch (const NetworkError& err) {
    if (err.code() == NetworkError::Code::kDisconnected) throw IoError(IoError::Code::kDisconnected, err.what());
    schema(err.what());
  }
}

Network parse_network(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw IoError(IoError::Code::kSyntax, err.what());
  }
  return network_from_json(doc);
}

Network load_network(const std::filesystem::path& path) { return parse_network(read_file(path)); }

Json network_to_json(const Network& net) {
  Json vertices = Json::array();
  for (VertexId v = 0; v < net.vertex_count(); ++v) vertices.push_back(net.vertex_label(v));
  Json edges = Json::array();
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    edges.push_back({{"id", net.edge_label(e)},
                     {"u", net.vertex_label(net.first_endpoint(e))},
                     {"v", net.vertex_label(net.second_endpoint(e))},
                     {"c", decimal_string(net.conductance(e))}});
  return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Json forest_to_json(const Network& net, const OrientedForest& forest) {
  Json entries = Json::array();
  Json roots = Json::array();
  for (VertexId v = 0; v < forest.vertex_count(); ++v) {
    if (const auto& e = forest.out_edge(v)) {
      Json entry{{"vertex", net.vertex_label(v)}};
      entry.update(oriented_json(net, *e));
      entries.push_back(std::move(entry));
    } else {
      roots.push_back(net.vertex_label(v));
    }
  }
  return Json{{"forest", std::move(entries)}, {"roots", std::move(roots)}};
}

OrientedForest forest_from_json(const Network& net, const Json& doc) {
  if (!doc.is_object() || !doc.contains("forest") || !doc["forest"].is_array()) schema("forest needs a \"forest\" array");
  OrientedForest f(net.vertex_count());
  for (const auto& entry : doc["forest"]) {
    if (!entry.is_object() || !entry.contains("vertex") || !entry.contains("edge") || !entry.contains("direction"))
      schema("forest entries need \"vertex\", \"edge\" and \"direction\"");
    auto v = net.find_vertex(integer_id(entry["vertex"], "vertex id"));
    auto e = net.find_edge(integer_id(entry["edge"], "edge id"));
    if (!v || !e) throw IoError(IoError::Code::kUnknownId, "forest names an unknown vertex or edge");
    const auto& dir = entry["direction"];
    if (!dir.is_string() || (dir != "forward" && dir != "reversed")) schema("direction must be forward or reversed");
    OrientedEdge oe{*e, dir == "reversed"};
    if (net.tail(oe) != *v) schema("forest edge does not leave its vertex");
    if (f.out_edge(*v)) throw IoError(IoError::Code::kDuplicateId, "vertex has two outgoing forest edges");
    f.set_out_edge(*v, oe);
  }
  if (auto problem = f.validate(net)) schema(*problem);
  return f;
}

Json trace_record(const Network& net, std::uint64_t step, const DynamicsStep& s) {
  return Json{{"step", step},
              {"proposed", oriented_json(net, s.proposed)},
              {"case", std::string(to_string(s.kind))},
              {"deleted", s.deleted ? oriented_json(net, *s.deleted) : Json(nullptr)}};
}

Json certification_to_json(std::string_view fixture, const StationarityReport& report) {
  return Json{{"fixture", fixture},
              {"states", report.states},
              {"max_stationarity_residual", to_string(report.max_stationarity_residual)},
              {"max_detailed_balance_residual", to_string(report.max_detailed_balance_residual)},
              {"passed", report.passed}};
}

Json tolerance_to_json(std::string_view fixture, const Network& net, OrientedEdge e, const ToleranceReport& report) {
  return Json{{"fixture", fixture},
              {"edge", oriented_json(net, e)},
              {"states", report.states},
              {"events", report.events},
              {"exhaustive", report.exhaustive},
              {"ratio", to_string(report.ratio)},
              {"min_slack", to_string(report.min_slack)},
              {"passed", report.passed}};
}

Json three_ends_to_json(const ThreeEndsReport& report, const std::vector<ComponentSummary>& components,
                        const Network& net) {
  Json cases = Json::array();
  for (auto c : report.cases) cases.push_back(std::string(to_string(c)));
  Json comps = Json::array();
  for (const auto& c : components) {
    Json trunk = nullptr;
    if (c.trunk) {
      trunk = Json::array();
      for (VertexId v : *c.trunk) trunk.push_back(net.vertex_label(v));
    }
    comps.push_back({{"component", c.component},
                     {"vertices", c.vertex_count},
                     {"boundary_rays", c.boundary_rays},
                     {"trunk", std::move(trunk)}});
  }
  return Json{{"fixture", report.fixture},
              {"preconditions_met", report.preconditions_met},
              {"precondition_failure", report.precondition_failure},
              {"ray_counts", report.ray_counts},
              {"cases", std::move(cases)},
              {"final_rays", report.final_rays},
              {"nondecreasing", report.nondecreasing},
              {"passed", report.passed},
              {"components", std::move(comps)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Code::kFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::Code::kFile, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError(IoError::Code::kFile, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cyclebreak
