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
#include <span>
#include <string>
#include <vector>

#include "inembed/graph.hpp"

namespace inembed {

using Walk = std::vector<NodeId>;

struct WalkConfig {
  std::size_t walk_len = 100;       // L
  std::size_t walks_per_node = 40;  // gamma
  std::uint64_t seed = 1;
};

// gamma walks per node, rounds over start nodes in ascending id. Each step
// picks a neighbor with probability proportional to edge weight; a walk at
// a node without neighbors stops early. Single seeded stream.
std::vector<Walk> generate_walks(const AttributedGraph& graph, const WalkConfig& config);

struct ContextPair {
  NodeId center;
  NodeId context;
  std::uint64_t count;
  friend bool operator==(const ContextPair&, const ContextPair&) = default;
};

// Sparse co-occurrence counts n(center, context), sorted by (center, context).
// Symmetric, never diagonal.
class ContextPairCounts {
 public:
  ContextPairCounts() = default;
  ContextPairCounts(std::size_t node_count, std::vector<ContextPair> entries);

  std::span<const ContextPair> entries() const { return entries_; }
  std::uint64_t total() const { return total_; }
  std::size_t node_count() const { return node_count_; }
  bool empty() const { return entries_.empty(); }

  std::uint64_t count(NodeId center, NodeId context) const;
  // sum_j n(i, j): how often node i occurs as a center.
  std::vector<double> center_mass() const;
  // Entries with the given center, as a contiguous range.
  std::span<const ContextPair> row(NodeId center) const;

 private:
  std::size_t node_count_ = 0;
  std::vector<ContextPair> entries_;
  std::vector<std::size_t> row_offsets_;
  std::uint64_t total_ = 0;
};

// Every ordered occurrence (walk[i], walk[j]) with 0 < |i - j| <= window
// and walk[i] != walk[j] adds one.
ContextPairCounts count_context_pairs(std::span<const Walk> walks, std::size_t window,
                                      std::size_t node_count);

// `center context count` lines using node names.
std::string format_pairs(const AttributedGraph& graph, const ContextPairCounts& counts);

}  // namespace inembed
