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

#include "inembed/incomplete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "inembed/error.hpp"
#include "inembed/rng.hpp"

namespace inembed {

namespace {

void check_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ValidationError("fraction must be in [0, 1]");
}

// First k entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<std::uint32_t> choose(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

AttributedGraph clear_rows(const AttributedGraph& graph, std::span<const std::uint32_t> rows) {
  GraphBuilder builder(graph);
  for (auto r : rows) builder.clear_node_attrs(r);
  return builder.build();
}

AttributedGraph clear_cols(const AttributedGraph& graph, std::span<const std::uint32_t> cols) {
  GraphBuilder builder(graph);
  for (auto c : cols) builder.clear_attr_column(c);
  return builder.build();
}

}  // namespace

CorruptionKind parse_corruption_kind(std::string_view name) {
  if (name == "row_random") return CorruptionKind::kRowRandom;
  if (name == "row_important") return CorruptionKind::kRowImportant;
  if (name == "col_random") return CorruptionKind::kColRandom;
  if (name == "col_important") return CorruptionKind::kColImportant;
  if (name == "edge_random") return CorruptionKind::kEdgeRandom;
  throw ValidationError("unknown corruption kind '" + std::string(name) + "'");
}

std::string_view corruption_kind_name(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::kRowRandom: return "row_random";
    case CorruptionKind::kRowImportant: return "row_important";
    case CorruptionKind::kColRandom: return "col_random";
    case CorruptionKind::kColImportant: return "col_important";
    case CorruptionKind::kEdgeRandom: return "edge_random";
  }
  return "?";
}

std::size_t fraction_count(double fraction, std::size_t count) {
  check_fraction(fraction);
  auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count) + 0.5));
  return std::min(k, count);
}

AttributedGraph drop_rows_random(const AttributedGraph& graph, double fraction, std::uint64_t seed) {
  const auto rows = choose(graph.node_count(), fraction_count(fraction, graph.node_count()), seed);
  return clear_rows(graph, rows);
}

std::vector<NodeId> degree_ranking(const AttributedGraph& graph) {
  std::vector<double> deg(graph.node_count());
  for (NodeId i = 0; i < graph.node_count(); ++i) deg[i] = graph.weighted_degree(i);
  std::vector<NodeId> order(graph.node_count());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return deg[a] > deg[b]; });
  return order;
}

AttributedGraph drop_rows_important(const AttributedGraph& graph, double fraction) {
  auto order = degree_ranking(graph);
  order.resize(fraction_count(fraction, graph.node_count()));
  return clear_rows(graph, order);
}

AttributedGraph drop_cols_random(const AttributedGraph& graph, double fraction, std::uint64_t seed) {
  const auto cols = choose(graph.attr_count(), fraction_count(fraction, graph.attr_count()), seed);
  return clear_cols(graph, cols);
}

double mutual_information(std::span<const std::vector<std::uint64_t>> table) {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> col_totals;
  std::vector<std::uint64_t> row_totals(table.size(), 0);
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x].size() > col_totals.size()) col_totals.resize(table[x].size(), 0);
    for (std::size_t y = 0; y < table[x].size(); ++y) {
      row_totals[x] += table[x][y];
      col_totals[y] += table[x][y];
      n += table[x][y];
    }
  }
  if (n == 0) return 0.0;
  double mi = 0.0;
  const double dn = static_cast<double>(n);
  for (std::size_t x = 0; x < table.size(); ++x) {
    for (std::size_t y = 0; y < table[x].size(); ++y) {
      const std::uint64_t nxy = table[x][y];
      if (nxy == 0) continue;
      // Ratio of integers, so independent cells give exactly log(1) = 0.
      const double ratio = (static_cast<double>(nxy) * dn) /
                           (static_cast<double>(row_totals[x]) * static_cast<double>(col_totals[y]));
      mi += (static_cast<double>(nxy) / dn) * std::log(ratio);
    }
  }
  return std::max(0.0, mi);
}

std::vector<double> attribute_label_mi(const AttributedGraph& graph, const LabelAssignment& labels) {
  if (labels.labels.size() != graph.node_count()) {
    throw ValidationError("label assignment does not match the graph");
  }
  const std::size_t classes = labels.class_count();
  // present[a][y]: labeled nodes of class y with attribute a present.
  std::vector<std::vector<std::uint64_t>> present(graph.attr_count(),
                                                  std::vector<std::uint64_t>(classes, 0));
  std::vector<std::uint64_t> class_sizes(classes, 0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (!labels.labels[i]) continue;
    const LabelId y = *labels.labels[i];
    ++class_sizes[y];
    for (const auto& e : graph.attrs(i)) {
      if (e.value > 0.0) ++present[e.attr][y];
    }
  }
  std::vector<double> mi(graph.attr_count());
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(classes));
  for (AttrId a = 0; a < graph.attr_count(); ++a) {
    for (std::size_t y = 0; y < classes; ++y) {
      table[1][y] = present[a][y];
      table[0][y] = class_sizes[y] - present[a][y];
    }
    mi[a] = mutual_information(table);
  }
  return mi;
}

std::vector<AttrId> mi_ranking(const AttributedGraph& graph, const LabelAssignment& labels) {
  std::vector<bool> used(labels.class_count(), false);
  std::size_t distinct = 0;
  for (const auto& l : labels.labels) {
    if (l && !used[*l]) {
      used[*l] = true;
      ++distinct;
    }
  }
  if (distinct < 2) throw ValidationError("importance ranking needs labels from at least two classes");
  const auto mi = attribute_label_mi(graph, labels);
  std::vector<AttrId> order(graph.attr_count());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](AttrId a, AttrId b) { return mi[a] > mi[b]; });
  return order;
}

AttributedGraph drop_cols_important(const AttributedGraph& graph, const LabelAssignment& labels,
                                    double fraction) {
  const std::size_t k = fraction_count(fraction, graph.attr_count());
  auto order = mi_ranking(graph, labels);
  order.resize(k);
  return clear_cols(graph, order);
}

EdgeRemoval remove_edges_random(const AttributedGraph& graph, double fraction, std::uint64_t seed) {
  const auto edges = graph.edges();
  const auto picked = choose(edges.size(), fraction_count(fraction, edges.size()), seed);
  EdgeRemoval out;
  GraphBuilder builder(graph);
  out.removed.reserve(picked.size());
  for (auto idx : picked) {
    builder.remove_edge(edges[idx].u, edges[idx].v);
    out.removed.push_back(edges[idx]);
  }
  out.graph = builder.build();
  return out;
}

EdgeRemoval apply_corruption(const AttributedGraph& graph, const CorruptionSpec& spec,
                             const LabelAssignment* labels) {
  check_fraction(spec.fraction);
  switch (spec.kind) {
    case CorruptionKind::kRowRandom:
      return {drop_rows_random(graph, spec.fraction, spec.seed), {}};
    case CorruptionKind::kRowImportant:
      return {drop_rows_important(graph, spec.fraction), {}};
    case CorruptionKind::kColRandom:
      return {drop_cols_random(graph, spec.fraction, spec.seed), {}};
    case CorruptionKind::kColImportant:
      if (!labels) throw ValidationError("col_important needs a label assignment");
      return {drop_cols_important(graph, *labels, spec.fraction), {}};
    case CorruptionKind::kEdgeRandom:
      return remove_edges_random(graph, spec.fraction, spec.seed);
  }
  throw ValidationError("unknown corruption kind");
}

}  // namespace inembed
