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

#include "inembed/walks.hpp"

#include <algorithm>
#include <unordered_map>

#include "inembed/error.hpp"
#include "inembed/rng.hpp"

namespace inembed {

std::vector<Walk> generate_walks(const AttributedGraph& graph, const WalkConfig& config) {
  if (config.walk_len < 1) throw ValidationError("walk length must be >= 1");
  if (config.walks_per_node < 1) throw ValidationError("walks per node must be >= 1");

  const std::size_t n = graph.node_count();
  // Cumulative neighbor weights for inversion sampling.
  std::vector<std::vector<double>> cumulative(n);
  for (NodeId v = 0; v < n; ++v) {
    auto nbrs = graph.neighbors(v);
    auto& cum = cumulative[v];
    cum.resize(nbrs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      acc += nbrs[k].weight;
      cum[k] = acc;
    }
  }

  Rng rng(config.seed);
  std::vector<Walk> walks;
  walks.reserve(n * config.walks_per_node);
  for (std::size_t round = 0; round < config.walks_per_node; ++round) {
    for (NodeId start = 0; start < n; ++start) {
      Walk walk;
      walk.reserve(config.walk_len);
      walk.push_back(start);
      NodeId cur = start;
      while (walk.size() < config.walk_len) {
        const auto& cum = cumulative[cur];
        if (cum.empty()) break;
        std::size_t k = 0;
        if (cum.size() > 1) {
          const double target = rng.uniform() * cum.back();
          k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
          k = std::min(k, cum.size() - 1);
        }
        cur = graph.neighbors(cur)[k].node;
        walk.push_back(cur);
      }
      walks.push_back(std::move(walk));
    }
  }
  return walks;
}

ContextPairCounts::ContextPairCounts(std::size_t node_count, std::vector<ContextPair> entries)
    : node_count_(node_count), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const ContextPair& a, const ContextPair& b) {
    return a.center != b.center ? a.center < b.center : a.context < b.context;
  });
  row_offsets_.assign(node_count_ + 1, 0);
  for (const auto& e : entries_) {
    if (e.center >= node_count_ || e.context >= node_count_) {
      throw ValidationError("context pair references unknown node");
    }
    ++row_offsets_[e.center + 1];
    total_ += e.count;
  }
  for (std::size_t i = 0; i < node_count_; ++i) row_offsets_[i + 1] += row_offsets_[i];
}

std::span<const ContextPair> ContextPairCounts::row(NodeId center) const {
  if (center >= node_count_) return {};
  return std::span<const ContextPair>(entries_).subspan(
      row_offsets_[center], row_offsets_[center + 1] - row_offsets_[center]);
}

std::uint64_t ContextPairCounts::count(NodeId center, NodeId context) const {
  auto r = row(center);
  auto it = std::lower_bound(r.begin(), r.end(), context,
                             [](const ContextPair& p, NodeId c) { return p.context < c; });
  return (it != r.end() && it->context == context) ? it->count : 0;
}

std::vector<double> ContextPairCounts::center_mass() const {
  std::vector<double> mass(node_count_, 0.0);
  for (const auto& e : entries_) mass[e.center] += static_cast<double>(e.count);
  return mass;
}

ContextPairCounts count_context_pairs(std::span<const Walk> walks, std::size_t window,
                                      std::size_t node_count) {
  if (window < 1) throw ValidationError("window must be >= 1");
  std::vector<std::unordered_map<NodeId, std::uint64_t>> rows(node_count);
  for (const auto& walk : walks) {
    const std::size_t len = walk.size();
    for (std::size_t i = 0; i < len; ++i) {
      const NodeId center = walk[i];
      const std::size_t lo = i > window ? i - window : 0;
      const std::size_t hi = std::min(len - 1, i + window);
      auto& row = rows.at(center);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i || walk[j] == center) continue;
        ++row[walk[j]];
      }
    }
  }
  std::vector<ContextPair> entries;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  entries.reserve(total);
  for (NodeId c = 0; c < node_count; ++c) {
    for (const auto& [ctx, cnt] : rows[c]) entries.push_back({c, ctx, cnt});
  }
  return ContextPairCounts(node_count, std::move(entries));
}

std::string format_pairs(const AttributedGraph& graph, const ContextPairCounts& counts) {
  std::string out;
  const auto& vocab = graph.node_vocab();
  for (const auto& e : counts.entries()) {
    out += vocab.name(e.center);
    out += ' ';
    out += vocab.name(e.context);
    out += ' ';
    out += std::to_string(e.count);
    out += '\n';
  }
  return out;
}

}  // namespace inembed
