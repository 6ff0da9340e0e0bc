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

#include "inembed/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "inembed/error.hpp"

namespace inembed {

namespace {

std::mutex g_warning_mutex;
WarningHandler g_warning_handler;

// Splits a line into whitespace-separated tokens, dropping a '#' comment.
std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tokens = tokenize(line);
    if (!tokens.empty()) fn(line_no, tokens);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

double parse_number(std::string_view token, const std::string& source, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw ParseError(source, line, "expected a finite number, got '" + std::string(token) + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(g_warning_mutex);
  std::swap(handler, g_warning_handler);
  return handler;
}

void warn(std::string_view message) {
  std::lock_guard lock(g_warning_mutex);
  if (g_warning_handler) {
    g_warning_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

std::uint32_t Vocabulary::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

double AttributedGraph::weighted_degree(NodeId i) const {
  double total = 0.0;
  for (const auto& n : adjacency_[i]) total += n.weight;
  return total;
}

std::optional<double> AttributedGraph::edge_weight(NodeId i, NodeId j) const {
  const auto& adj = adjacency_[i];
  auto it = std::lower_bound(adj.begin(), adj.end(), j,
                             [](const Neighbor& n, NodeId id) { return n.node < id; });
  if (it == adj.end() || it->node != j) return std::nullopt;
  return it->weight;
}

bool AttributedGraph::has_edge(NodeId i, NodeId j) const { return edge_weight(i, j).has_value(); }

std::optional<double> AttributedGraph::attr_value(NodeId i, AttrId j) const {
  const auto& row = attrs_[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const AttrEntry& e, AttrId id) { return e.attr < id; });
  if (it == row.end() || it->attr != j) return std::nullopt;
  return it->value;
}

bool AttributedGraph::observed(NodeId i, AttrId j) const { return attr_value(i, j).has_value(); }

std::size_t AttributedGraph::observed_attr_count() const {
  std::size_t total = 0;
  for (const auto& row : attrs_) total += row.size();
  return total;
}

std::vector<Edge> AttributedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (const auto& n : adjacency_[u]) {
      if (n.node > u) out.push_back({u, n.node, n.weight});
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(const AttributedGraph& graph)
    : node_vocab_(graph.node_vocab_), attr_vocab_(graph.attr_vocab_) {
  adjacency_.resize(graph.node_count());
  attrs_.resize(graph.node_count());
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (const auto& n : graph.adjacency_[i]) adjacency_[i].emplace(n.node, n.weight);
    for (const auto& e : graph.attrs_[i]) attrs_[i].emplace(e.attr, e.value);
  }
}

NodeId GraphBuilder::add_node(std::string_view name) {
  NodeId id = node_vocab_.intern(name);
  if (id >= adjacency_.size()) {
    adjacency_.resize(id + 1);
    attrs_.resize(id + 1);
  }
  return id;
}

AttrId GraphBuilder::add_attr(std::string_view name) { return attr_vocab_.intern(name); }

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw ValidationError("edge weight must be positive and finite");
  }
  if (u == v) return;
  adjacency_.at(u)[v] += weight;
  adjacency_.at(v)[u] += weight;
}

bool GraphBuilder::set_attr(NodeId node, AttrId attr, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError("attribute value must be non-negative and finite");
  }
  if (attr >= attr_vocab_.size()) throw ValidationError("unknown attribute id");
  auto [it, inserted] = attrs_.at(node).insert_or_assign(attr, value);
  return !inserted;
}

void GraphBuilder::clear_edges() {
  for (auto& adj : adjacency_) adj.clear();
}

void GraphBuilder::clear_node_attrs(NodeId node) { attrs_.at(node).clear(); }

void GraphBuilder::clear_attr_column(AttrId attr) {
  for (auto& row : attrs_) row.erase(attr);
}

void GraphBuilder::remove_edge(NodeId u, NodeId v) {
  adjacency_.at(u).erase(v);
  adjacency_.at(v).erase(u);
}

AttributedGraph GraphBuilder::build() const {
  AttributedGraph g;
  g.node_vocab_ = node_vocab_;
  g.attr_vocab_ = attr_vocab_;
  g.adjacency_.resize(adjacency_.size());
  g.attrs_.resize(attrs_.size());
  std::size_t directed = 0;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    auto& adj = g.adjacency_[i];
    adj.reserve(adjacency_[i].size());
    for (const auto& [node, w] : adjacency_[i]) adj.push_back({node, w});
    std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    directed += adj.size();

    auto& row = g.attrs_[i];
    row.reserve(attrs_[i].size());
    for (const auto& [attr, v] : attrs_[i]) row.push_back({attr, v});
    std::sort(row.begin(), row.end(), [](const AttrEntry& a, const AttrEntry& b) { return a.attr < b.attr; });
  }
  g.edge_count_ = directed / 2;
  return g;
}

std::size_t LabelAssignment::labeled_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); }));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

AttributedGraph parse_edges(std::string_view text, const std::string& source) {
  GraphBuilder builder;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() > 3) throw ParseError(source, line, "expected 'src dst [weight]'");
    NodeId u = builder.add_node(tok[0]);
    if (tok.size() == 1) return;
    NodeId v = builder.add_node(tok[1]);
    double w = 1.0;
    if (tok.size() == 3) {
      w = parse_number(tok[2], source, line);
      if (w <= 0.0) {
        throw ValidationError(source + ":" + std::to_string(line) +
                              ": edge weight must be positive, got " + std::string(tok[2]));
      }
    }
    builder.add_edge(u, v, w);
  });
  return builder.build();
}

AttributedGraph load_edges(const std::filesystem::path& path) {
  return parse_edges(read_text(path), path.string());
}

AttributedGraph parse_attrs(const AttributedGraph& graph, std::string_view text,
                            const std::string& source) {
  GraphBuilder builder(graph);
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() != 3) throw ParseError(source, line, "expected 'node attr value'");
    auto node = graph.node_vocab().find(tok[0]);
    if (!node) {
      throw ValidationError(source + ":" + std::to_string(line) + ": unknown node '" +
                            std::string(tok[0]) + "'");
    }
    double value = parse_number(tok[2], source, line);
    if (value < 0.0) {
      throw ValidationError(source + ":" + std::to_string(line) +
                            ": attribute value must be non-negative, got " + std::string(tok[2]));
    }
    AttrId attr = builder.add_attr(tok[1]);
    if (builder.set_attr(*node, attr, value)) {
      warn(source + ":" + std::to_string(line) + ": duplicate entry for (" + std::string(tok[0]) +
           ", " + std::string(tok[1]) + "), keeping the last value");
    }
  });
  return builder.build();
}

AttributedGraph load_attrs(const AttributedGraph& graph, const std::filesystem::path& path) {
  return parse_attrs(graph, read_text(path), path.string());
}

LabelAssignment parse_labels(const AttributedGraph& graph, std::string_view text,
                             const std::string& source) {
  LabelAssignment out;
  out.labels.assign(graph.node_count(), std::nullopt);
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() != 2) throw ParseError(source, line, "expected 'node label'");
    auto node = graph.node_vocab().find(tok[0]);
    if (!node) {
      throw ValidationError(source + ":" + std::to_string(line) + ": unknown node '" +
                            std::string(tok[0]) + "'");
    }
    if (out.labels[*node]) {
      throw ValidationError(source + ":" + std::to_string(line) + ": duplicate label for node '" +
                            std::string(tok[0]) + "'");
    }
    out.labels[*node] = out.classes.intern(tok[1]);
  });
  return out;
}

LabelAssignment load_labels(const AttributedGraph& graph, const std::filesystem::path& path) {
  return parse_labels(graph, read_text(path), path.string());
}

std::string format_edges(const AttributedGraph& graph) {
  const auto edges = graph.edges();
  const auto& vocab = graph.node_vocab();

  // Reloading assigns ids in first-seen order. Declare every node up front
  // unless the edge stream alone already reproduces the ids.
  bool declare = false;
  {
    std::vector<bool> seen(graph.node_count(), false);
    NodeId next = 0;
    auto visit = [&](NodeId n) {
      if (seen[n]) return;
      seen[n] = true;
      if (n != next) declare = true;
      ++next;
    };
    for (const auto& e : edges) {
      visit(e.u);
      visit(e.v);
    }
    if (next != graph.node_count()) declare = true;
  }

  std::string out;
  if (declare) {
    for (NodeId i = 0; i < graph.node_count(); ++i) {
      out += vocab.name(i);
      out += '\n';
    }
  }
  for (const auto& e : edges) {
    out += vocab.name(e.u);
    out += ' ';
    out += vocab.name(e.v);
    if (e.weight != 1.0) {
      out += ' ';
      out += format_double(e.weight);
    }
    out += '\n';
  }
  return out;
}

std::string format_attrs(const AttributedGraph& graph) {
  // Attribute ids follow first-seen order on reload. Row-major output keeps
  // them when rows already introduce attributes in id order; otherwise emit
  // column-major, which always does (columns without entries are lost).
  std::string out;
  const auto& nodes = graph.node_vocab();
  const auto& attrs = graph.attr_vocab();
  std::vector<bool> seen(graph.attr_count(), false);
  AttrId next = 0;
  bool ordered = true;
  for (NodeId i = 0; i < graph.node_count() && ordered; ++i) {
    for (const auto& e : graph.attrs(i)) {
      if (seen[e.attr]) continue;
      seen[e.attr] = true;
      if (e.attr != next++) {
        ordered = false;
        break;
      }
    }
  }
  if (!ordered) {
    for (AttrId a = 0; a < graph.attr_count(); ++a) {
      for (NodeId i = 0; i < graph.node_count(); ++i) {
        if (auto v = graph.attr_value(i, a)) {
          out += nodes.name(i) + ' ' + attrs.name(a) + ' ' + format_double(*v) + '\n';
        }
      }
    }
    return out;
  }
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (const auto& e : graph.attrs(i)) {
      out += nodes.name(i) + ' ' + attrs.name(e.attr) + ' ' + format_double(e.value) + '\n';
    }
  }
  return out;
}

std::string format_labels(const AttributedGraph& graph, const LabelAssignment& labels) {
  std::string out;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    if (i < labels.labels.size() && labels.labels[i]) {
      out += graph.node_vocab().name(i) + ' ' + labels.classes.name(*labels.labels[i]) + '\n';
    }
  }
  return out;
}

}  // namespace inembed
