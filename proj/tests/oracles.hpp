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

// Independent reference computations for tests. Nothing here calls into the
// library's numeric paths (kernels, model, walks counting); plain loops only.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "inembed/graph.hpp"
#include "inembed/model.hpp"

namespace inembed::oracle {

inline double plain_dot(std::span<const double> a, std::span<const double> b) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<long double>(a[k]) * b[k];
  return static_cast<double>(s);
}

inline double plain_log_sigmoid(double x) { return -std::log1p(std::exp(-x)); }

// Negative-sampling loss straight from its definition.
inline double ns_loss(const EmbeddingModel& m, Objective which, NodeId i, std::uint32_t j,
                      const std::vector<std::uint32_t>& negs) {
  double loss = -plain_log_sigmoid(plain_dot(m.input(i), m.output(which, j)));
  for (auto k : negs) loss -= plain_log_sigmoid(-plain_dot(m.input(i), m.output(which, k)));
  return loss;
}

// Full objective by brute force: explicit softmax, long double accumulation.
inline double full_objective(const EmbeddingModel& m, const std::map<std::pair<NodeId, NodeId>, double>& counts,
                             const AttributedGraph& g) {
  auto log_softmax = [&](Objective which, NodeId i, std::uint32_t j) {
    const std::size_t n = m.output_count(which);
    long double z = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      z += std::exp(static_cast<long double>(plain_dot(m.input(i), m.output(which, static_cast<std::uint32_t>(k)))));
    }
    return static_cast<long double>(plain_dot(m.input(i), m.output(which, j))) - std::log(z);
  };
  long double s_sum = 0.0L, s_total = 0.0L;
  for (const auto& [key, n] : counts) {
    s_sum -= n * log_softmax(Objective::kStructure, key.first, key.second);
    s_total += n;
  }
  long double a_sum = 0.0L, a_total = 0.0L;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (AttrId j = 0; j < g.attr_count(); ++j) {
      const double omega = g.observed(i, j) ? 1.0 : 0.0;
      const double x = g.attr_value(i, j).value_or(0.0);
      if (omega * x == 0.0) continue;
      a_sum -= omega * x * log_softmax(Objective::kAttribute, i, j);
      a_total += omega * x;
    }
  }
  long double total = s_sum / s_total;
  if (a_total > 0) total += a_sum / a_total;
  return static_cast<double>(total);
}

// Window co-occurrences by explicit offsets, skipping self pairs.
inline std::map<std::pair<NodeId, NodeId>, std::uint64_t> window_counts(const std::vector<std::vector<NodeId>>& walks,
                                                                        std::size_t t) {
  std::map<std::pair<NodeId, NodeId>, std::uint64_t> out;
  for (const auto& w : walks) {
    const long len = static_cast<long>(w.size());
    for (long i = 0; i < len; ++i) {
      for (long off = -static_cast<long>(t); off <= static_cast<long>(t); ++off) {
        const long j = i + off;
        if (off == 0 || j < 0 || j >= len) continue;
        if (w[i] == w[j]) continue;
        ++out[{w[i], w[j]}];
      }
    }
  }
  return out;
}

inline std::set<NodeId> neighbor_set(const AttributedGraph& g, NodeId i) {
  std::set<NodeId> s;
  for (const auto& n : g.neighbors(i)) s.insert(n.node);
  return s;
}

// Plug-in MI from a list of (x, y) observations.
inline double mi_from_samples(const std::vector<std::pair<int, int>>& xy) {
  std::map<int, double> px, py;
  std::map<std::pair<int, int>, double> pxy;
  const double n = static_cast<double>(xy.size());
  for (const auto& p : xy) {
    px[p.first] += 1.0 / n;
    py[p.second] += 1.0 / n;
    pxy[p] += 1.0 / n;
  }
  double mi = 0.0;
  for (const auto& [k, p] : pxy) mi += p * std::log(p / (px[k.first] * py[k.second]));
  return mi;
}

}  // namespace inembed::oracle
