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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace inembed {

using NodeId = std::uint32_t;
using AttrId = std::uint32_t;
using LabelId = std::uint32_t;

// Bidirectional string <-> dense id map. Ids are assigned in first-seen order.
class Vocabulary {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  std::span<const std::string> names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

struct Neighbor {
  NodeId node;
  double weight;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// One observed attribute entry: Omega_ij = 1 with value X_ij >= 0.
struct AttrEntry {
  AttrId attr;
  double value;
  friend bool operator==(const AttrEntry&, const AttrEntry&) = default;
};

struct Edge {
  NodeId u;
  NodeId v;
  double weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected attributed graph with an attribute observation mask.
//
// Neighbor lists and attribute lists are sorted by id. An attribute entry
// being present means the value is observed (possibly zero); absence means
// the value is missing. Immutable once built; use GraphBuilder or the
// loaders to construct one.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t attr_count() const { return attr_vocab_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Neighbor> neighbors(NodeId i) const { return adjacency_[i]; }
  std::span<const AttrEntry> attrs(NodeId i) const { return attrs_[i]; }
  std::size_t degree(NodeId i) const { return adjacency_[i].size(); }
  double weighted_degree(NodeId i) const;

  bool has_edge(NodeId i, NodeId j) const;
  std::optional<double> edge_weight(NodeId i, NodeId j) const;
  // Omega_ij.
  bool observed(NodeId i, AttrId j) const;
  // X_ij if observed.
  std::optional<double> attr_value(NodeId i, AttrId j) const;
  std::size_t observed_attr_count() const;

  // Undirected edges with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

  const Vocabulary& node_vocab() const { return node_vocab_; }
  const Vocabulary& attr_vocab() const { return attr_vocab_; }

  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
    return a.adjacency_ == b.adjacency_ && a.attrs_ == b.attrs_ &&
           a.node_vocab_.names().size() == b.node_vocab_.names().size() &&
           std::equal(a.node_vocab_.names().begin(), a.node_vocab_.names().end(),
                      b.node_vocab_.names().begin()) &&
           a.attr_vocab_.names().size() == b.attr_vocab_.names().size() &&
           std::equal(a.attr_vocab_.names().begin(), a.attr_vocab_.names().end(),
                      b.attr_vocab_.names().begin());
  }

 private:
  friend class GraphBuilder;

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::vector<AttrEntry>> attrs_;
  Vocabulary node_vocab_;
  Vocabulary attr_vocab_;
  std::size_t edge_count_ = 0;
};

// Accumulates nodes, edges and attributes, then freezes them into a graph.
// Duplicate edges sum their weights, self-loops are dropped, a repeated
// (node, attr) entry overwrites the earlier value.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  // Starts from an existing graph (copying vocabularies and content).
  explicit GraphBuilder(const AttributedGraph& graph);

  NodeId add_node(std::string_view name);
  AttrId add_attr(std::string_view name);
  void add_edge(NodeId u, NodeId v, double weight = 1.0);
  // Returns true when an existing entry was overwritten.
  bool set_attr(NodeId node, AttrId attr, double value);

  void clear_edges();
  void clear_node_attrs(NodeId node);
  void clear_attr_column(AttrId attr);
  void remove_edge(NodeId u, NodeId v);

  std::size_t node_count() const { return adjacency_.size(); }
  const Vocabulary& node_vocab() const { return node_vocab_; }

  AttributedGraph build() const;

 private:
  std::vector<std::unordered_map<NodeId, double>> adjacency_;
  std::vector<std::unordered_map<AttrId, double>> attrs_;
  Vocabulary node_vocab_;
  Vocabulary attr_vocab_;
};

// Per-node optional class id; class ids are dense from 0 in first-seen order.
struct LabelAssignment {
  std::vector<std::optional<LabelId>> labels;
  Vocabulary classes;

  std::size_t class_count() const { return classes.size(); }
  std::size_t labeled_count() const;
};

// Edge list: `src dst [weight]` per line, '#' comments, any whitespace.
// A line holding a single token declares a node without edges.
AttributedGraph load_edges(const std::filesystem::path& path);
AttributedGraph parse_edges(std::string_view text, const std::string& source = "<memory>");

// Attribute triples `node attr value`; the node must already exist.
AttributedGraph load_attrs(const AttributedGraph& graph, const std::filesystem::path& path);
AttributedGraph parse_attrs(const AttributedGraph& graph, std::string_view text,
                            const std::string& source = "<memory>");

LabelAssignment load_labels(const AttributedGraph& graph, const std::filesystem::path& path);
LabelAssignment parse_labels(const AttributedGraph& graph, std::string_view text,
                             const std::string& source = "<memory>");

// Text serializations accepted by the loaders above.
std::string format_edges(const AttributedGraph& graph);
std::string format_attrs(const AttributedGraph& graph);
std::string format_labels(const AttributedGraph& graph, const LabelAssignment& labels);
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace inembed
