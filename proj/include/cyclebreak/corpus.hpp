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

#include <string>
#include <vector>

#include "cyclebreak/network.hpp"
#include "cyclebreak/source.hpp"

namespace cyclebreak {

/// A small wired contraction with the base network it came from.
struct CorpusFixture {
  std::string id;
  Network base;
  std::vector<VertexId> keep;
  WiredContraction contraction;
};

/// Twelve contractions with at most five kept vertices and eight edges,
/// covering parallel edges, self-loops, edges wholly outside the kept set
/// and state spaces on both sides of twelve trees.
std::vector<CorpusFixture> builtin_corpus();

/// K4 with unit conductances.
Network unit_k4();
/// Triangle with conductances 1, 2, 3 on edges 0-1, 1-2, 2-0.
Network weighted_triangle();

}  // namespace cyclebreak
