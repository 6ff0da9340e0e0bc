// Copyright 2026 The inembed Authors. All Rights Reserved.
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

#include <cstddef>
#include <cstdint>

#include "inembed/graph.hpp"

namespace inembed {

// Stochastic block model with block-indicative binary attributes.
struct BlockGraphConfig {
  std::size_t blocks = 2;
  std::size_t nodes_per_block = 100;
  double p_intra = 0.10;
  double p_inter = 0.01;
  std::size_t attrs_per_block = 50;
  // Each binary attribute bit is flipped with this probability.
  double flip_noise = 0.1;
  std::uint64_t seed = 1;
};

struct LabeledGraph {
  AttributedGraph graph;
  LabelAssignment labels;  // block of every node
};

// Nodes n0..; attributes a0.. where block b owns a[b*attrs_per_block, ...).
// Only attributes whose (noisy) bit is 1 are recorded, with value 1.
LabeledGraph make_block_graph(const BlockGraphConfig& config);

}  // namespace inembed
