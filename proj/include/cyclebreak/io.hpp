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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cyclebreak/ends.hpp"
#include "cyclebreak/forest.hpp"
#include "cyclebreak/network.hpp"
#include "cyclebreak/oracle.hpp"
#include "cyclebreak/update.hpp"

namespace cyclebreak {

class IoError : public std::runtime_error {
 public:
  enum class Code {
    kFile,
    kSyntax,
    kSchema,
    kNonPositiveConductance,
    kDisconnected,
    kDuplicateId,
    kUnknownId,
  };

  IoError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

using Json = nlohmann::ordered_json;

/// {"vertices":[ids],"edges":[{"id","u","v","c"}]} with integer ids and
/// `c` a decimal (or p/q) string. Vertex and edge ids become labels.
Network network_from_json(const Json& doc);
Network parse_network(std::string_view text);
Network load_network(const std::filesystem::path& path);
Json network_to_json(const Network& net);

/// {"forest":[{"vertex","edge","direction"}],"roots":[ids]}, direction
/// "forward" when the vertex is the edge's first endpoint.
Json forest_to_json(const Network& net, const OrientedForest& forest);
OrientedForest forest_from_json(const Network& net, const Json& doc);

/// One trace line: {"step","proposed":{"edge","direction"},"case","deleted"}.
Json trace_record(const Network& net, std::uint64_t step, const DynamicsStep& s);

Json certification_to_json(std::string_view fixture, const StationarityReport& report);
Json tolerance_to_json(std::string_view fixture, const Network& net, OrientedEdge e, const ToleranceReport& report);
Json three_ends_to_json(const ThreeEndsReport& report, const std::vector<ComponentSummary>& components,
                        const Network& net);

std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes: to a temporary, then renames.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cyclebreak
