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

#include "inembed/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "inembed/error.hpp"
#include "inembed/kernels.hpp"
#include "inembed/rng.hpp"

namespace inembed {

EmbeddingModel::EmbeddingModel(std::size_t node_count, std::size_t attr_count, std::size_t dim)
    : node_count_(node_count),
      attr_count_(attr_count),
      dim_(dim),
      w_in_(node_count * dim, 0.0),
      w_out_s_(node_count * dim, 0.0),
      w_out_a_(attr_count * dim, 0.0) {
  if (dim == 0) throw ValidationError("embedding dimension must be >= 1");
}

bool EmbeddingModel::all_finite() const {
  auto finite = [](const std::vector<double>& w) {
    return std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(w_in_) && finite(w_out_s_) && finite(w_out_a_);
}

EmbeddingModel init_model(std::size_t node_count, std::size_t attr_count, std::size_t dim,
                          std::uint64_t seed) {
  EmbeddingModel model(node_count, attr_count, dim);
  Rng rng(seed);
  const double scale = 1.0 / static_cast<double>(dim);
  for (double& w : model.input_matrix()) {
    // uniform() is in [0, 1); reject 0 so the open interval holds.
    double u = rng.uniform();
    while (u == 0.0) u = rng.uniform();
    w = (u - 0.5) * scale;
  }
  return model;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  // log s(x) = -log(1 + e^-x)
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

namespace {

// log sum_k exp(phi . w_k) over one output matrix, plus the logits.
double log_partition(const EmbeddingModel& model, Objective which, NodeId i,
                     std::vector<double>& logits) {
  const std::size_t n = model.output_count(which);
  logits.resize(n);
  const auto phi = model.input(i);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    logits[k] = kernels::dot(phi, model.output(which, static_cast<std::uint32_t>(k)));
    mx = std::max(mx, logits[k]);
  }
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - mx);
  return mx + std::log(sum);
}

double softmax_prob(const EmbeddingModel& model, Objective which, NodeId i, std::uint32_t j) {
  std::vector<double> logits;
  const double lz = log_partition(model, which, i, logits);
  return std::exp(logits[j] - lz);
}

}  // namespace

double prob_context(const EmbeddingModel& model, NodeId i, NodeId j) {
  return softmax_prob(model, Objective::kStructure, i, j);
}

double prob_attr(const EmbeddingModel& model, NodeId i, AttrId j) {
  return softmax_prob(model, Objective::kAttribute, i, j);
}

ObjectiveReport exact_objective(const EmbeddingModel& model, const ContextPairCounts& counts,
                                const AttributedGraph& graph) {
  if (counts.total() == 0) throw ValidationError("objective needs at least one context pair");
  if (counts.node_count() != model.node_count() || graph.node_count() != model.node_count()) {
    throw ValidationError("model, counts and graph disagree on node count");
  }
  ObjectiveReport report;
  std::vector<double> logits;
  double attr_mass = 0.0;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    auto row = counts.row(i);
    if (!row.empty()) {
      const double lz = log_partition(model, Objective::kStructure, i, logits);
      for (const auto& p : row) {
        report.structure_sum -= static_cast<double>(p.count) * (logits[p.context] - lz);
      }
    }
    bool has_mass = false;
    for (const auto& e : graph.attrs(i)) has_mass |= e.value > 0.0;
    if (has_mass) {
      if (graph.attr_count() != model.attr_count()) {
        throw ValidationError("model and graph disagree on attribute count");
      }
      const double lz = log_partition(model, Objective::kAttribute, i, logits);
      for (const auto& e : graph.attrs(i)) {
        if (e.value <= 0.0) continue;
        attr_mass += e.value;
        report.attribute_sum -= e.value * (logits[e.attr] - lz);
      }
    }
  }
  report.alpha1 = 1.0 / static_cast<double>(counts.total());
  report.alpha2 = attr_mass > 0.0 ? 1.0 / attr_mass : 0.0;
  report.total = report.alpha1 * report.structure_sum + report.alpha2 * report.attribute_sum;
  return report;
}

double pair_loss(const EmbeddingModel& model, Objective which, NodeId i, std::uint32_t j,
                 std::span<const std::uint32_t> negatives) {
  const auto phi = model.input(i);
  double loss = -log_sigmoid(kernels::dot(phi, model.output(which, j)));
  for (std::uint32_t k : negatives) loss -= log_sigmoid(-kernels::dot(phi, model.output(which, k)));
  return loss;
}

PairGradients pair_gradients(const EmbeddingModel& model, Objective which, NodeId i,
                             std::uint32_t j, std::span<const std::uint32_t> negatives) {
  const std::size_t d = model.dim();
  const auto phi = model.input(i);
  PairGradients g;
  g.input.assign(d, 0.0);

  auto accumulate = [&](std::uint32_t col, double coef) {
    // coef = s(phi . w) - label
    const auto w = model.output(which, col);
    kernels::axpy(coef, w, g.input);
    auto it = std::find_if(g.outputs.begin(), g.outputs.end(),
                           [col](const auto& e) { return e.first == col; });
    if (it == g.outputs.end()) {
      g.outputs.emplace_back(col, std::vector<double>(d, 0.0));
      it = std::prev(g.outputs.end());
    }
    kernels::axpy(coef, phi, it->second);
  };

  accumulate(j, sigmoid(kernels::dot(phi, model.output(which, j))) - 1.0);
  for (std::uint32_t k : negatives) accumulate(k, sigmoid(kernels::dot(phi, model.output(which, k))));
  return g;
}

void sgd_step(EmbeddingModel& model, Objective which, NodeId i, std::uint32_t j,
              std::span<const std::uint32_t> negatives, double eta, SgdScratch& scratch) {
  const auto& kern = kernels::active();
  const std::size_t d = model.dim();
  const std::size_t targets = negatives.size() + 1;
  auto target = [&](std::size_t t) { return t == 0 ? j : negatives[t - 1]; };

  double* phi = model.input(i).data();
  scratch.coef.resize(targets);
  scratch.input_grad.assign(d, 0.0);

  // Scores first: a negative drawn twice must see the same pre-step column.
  for (std::size_t t = 0; t < targets; ++t) {
    const double label = t == 0 ? 1.0 : 0.0;
    const double score = kern.dot(phi, model.output(which, target(t)).data(), d);
    scratch.coef[t] = sigmoid(score) - label;
  }
  for (std::size_t t = 0; t < targets; ++t) {
    kern.axpy(scratch.coef[t], model.output(which, target(t)).data(), scratch.input_grad.data(), d);
  }
  for (std::size_t t = 0; t < targets; ++t) {
    kern.axpy(-eta * scratch.coef[t], phi, model.output(which, target(t)).data(), d);
  }
  kern.axpy(-eta, scratch.input_grad.data(), phi, d);
}

double lr_schedule(double eta0, std::uint64_t tau, std::uint64_t max_iters, std::uint64_t period,
                   double floor) {
  if (max_iters == 0) return eta0;
  const std::uint64_t step = period == 0 ? tau : (tau / period) * period;
  const double frac = std::min(1.0, static_cast<double>(step) / static_cast<double>(max_iters));
  return std::max(floor, eta0 * (1.0 - frac));
}

std::string format_embeddings(const AttributedGraph& graph, const EmbeddingModel& model) {
  std::string out = std::to_string(model.node_count()) + ' ' + std::to_string(model.dim()) + '\n';
  char buf[64];
  for (NodeId i = 0; i < model.node_count(); ++i) {
    out += graph.node_vocab().name(i);
    for (double v : model.input(i)) {
      // -0.000000 reads oddly and differs from 0.000000 byte-wise.
      int len = std::snprintf(buf, sizeof(buf), " %.6f", v == 0.0 ? 0.0 : v);
      if (len > 1 && std::string_view(buf, static_cast<std::size_t>(len)) == " -0.000000") {
        len = std::snprintf(buf, sizeof(buf), " %.6f", 0.0);
      }
      out.append(buf, static_cast<std::size_t>(len));
    }
    out += '\n';
  }
  return out;
}

}  // namespace inembed
