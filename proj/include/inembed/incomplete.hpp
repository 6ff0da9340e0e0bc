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
#include <string_view>
#include <vector>

#include "inembed/graph.hpp"

namespace inembed {

enum class CorruptionKind { kRowRandom, kRowImportant, kColRandom, kColImportant, kEdgeRandom };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::kRowRandom;
  double fraction = 0.0;  // in [0, 1]
  std::uint64_t seed = 1;
};

CorruptionKind parse_corruption_kind(std::string_view name);
std::string_view corruption_kind_name(CorruptionKind kind);

// floor(fraction * count + 0.5): round half up.
std::size_t fraction_count(double fraction, std::size_t count);

// Clears every attribute entry of round(fraction * |V|) nodes picked uniformly.
AttributedGraph drop_rows_random(const AttributedGraph& graph, double fraction, std::uint64_t seed);

// Nodes ordered by weighted degree (descending, ties by ascending id).
std::vector<NodeId> degree_ranking(const AttributedGraph& graph);
// Clears the attribute rows of the top round(fraction * |V|) nodes by degree.
AttributedGraph drop_rows_important(const AttributedGraph& graph, double fraction);

AttributedGraph drop_cols_random(const AttributedGraph& graph, double fraction, std::uint64_t seed);

// Plug-in mutual information (natural log) between binarized attribute
// presence (observed and X_ij > 0) and the class label, over labeled nodes.
std::vector<double> attribute_label_mi(const AttributedGraph& graph, const LabelAssignment& labels);
// MI of a contingency table given as counts[x][y].
double mutual_information(std::span<const std::vector<std::uint64_t>> table);
// Attributes ordered by MI (descending, ties by ascending id). Needs >= 2 classes.
std::vector<AttrId> mi_ranking(const AttributedGraph& graph, const LabelAssignment& labels);
AttributedGraph drop_cols_important(const AttributedGraph& graph, const LabelAssignment& labels,
                                    double fraction);

struct EdgeRemoval {
  AttributedGraph graph;
  std::vector<Edge> removed;  // u < v, in ascending (u, v)
};

// Removes round(fraction * |E|) undirected edges chosen uniformly.
EdgeRemoval remove_edges_random(const AttributedGraph& graph, double fraction, std::uint64_t seed);

// Dispatch on spec.kind. `labels` is only read for kColImportant.
EdgeRemoval apply_corruption(const AttributedGraph& graph, const CorruptionSpec& spec,
                             const LabelAssignment* labels = nullptr);

}  // namespace inembed
