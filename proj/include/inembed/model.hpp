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
#include <utility>
#include <vector>

#include "inembed/graph.hpp"
#include "inembed/walks.hpp"

namespace inembed {

// Which output layer a pair targets: context nodes or attributes.
enum class Objective { kStructure, kAttribute };

// Parameters of the three-layer network.
//
// The input layer is one-hot over nodes, so the hidden representation of
// node i is exactly row i of the input matrix; no one-hot vector is ever
// built. Both output matrices are d x n in the math; they are stored
// transposed (one contiguous row per output column) so every update touches
// contiguous memory.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(std::size_t node_count, std::size_t attr_count, std::size_t dim);

  std::size_t node_count() const { return node_count_; }
  std::size_t attr_count() const { return attr_count_; }
  std::size_t dim() const { return dim_; }

  // Embedding of node i.
  std::span<double> input(NodeId i) { return {w_in_.data() + i * dim_, dim_}; }
  std::span<const double> input(NodeId i) const { return {w_in_.data() + i * dim_, dim_}; }

  // Column j of the structure or attribute output matrix.
  std::span<double> output(Objective which, std::uint32_t j) {
    auto& w = which == Objective::kStructure ? w_out_s_ : w_out_a_;
    return {w.data() + j * dim_, dim_};
  }
  std::span<const double> output(Objective which, std::uint32_t j) const {
    const auto& w = which == Objective::kStructure ? w_out_s_ : w_out_a_;
    return {w.data() + j * dim_, dim_};
  }
  std::size_t output_count(Objective which) const {
    return which == Objective::kStructure ? node_count_ : attr_count_;
  }

  std::span<double> input_matrix() { return w_in_; }
  std::span<const double> input_matrix() const { return w_in_; }
  std::span<double> output_matrix(Objective which) {
    return which == Objective::kStructure ? std::span<double>(w_out_s_) : std::span<double>(w_out_a_);
  }
  std::span<const double> output_matrix(Objective which) const {
    return which == Objective::kStructure ? std::span<const double>(w_out_s_)
                                          : std::span<const double>(w_out_a_);
  }

  bool all_finite() const;

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;

 private:
  std::size_t node_count_ = 0;
  std::size_t attr_count_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> w_in_;
  std::vector<double> w_out_s_;
  std::vector<double> w_out_a_;
};

// Input rows i.i.d. uniform in (-0.5/d, 0.5/d); both output matrices zero.
EmbeddingModel init_model(std::size_t node_count, std::size_t attr_count, std::size_t dim,
                          std::uint64_t seed);

// Numerically stable logistic function and log(sigmoid).
double sigmoid(double x);
double log_sigmoid(double x);

// Full-softmax conditionals P(v_j | v_i) and P(a_j | v_i).
double prob_context(const EmbeddingModel& model, NodeId i, NodeId j);
double prob_attr(const EmbeddingModel& model, NodeId i, AttrId j);

struct ObjectiveReport {
  double structure_sum = 0.0;  // -sum n(i,j) log P(v_j|v_i)
  double attribute_sum = 0.0;  // -sum Omega_ij X_ij log P(a_j|v_i)
  double alpha1 = 0.0;         // 1 / sum n(i,j)
  double alpha2 = 0.0;         // 1 / sum Omega_ij X_ij, 0 without attribute mass
  double total = 0.0;          // alpha1 * structure_sum + alpha2 * attribute_sum
};

// Full-softmax training objective. O(|V| (|V| + |A|) d); intended for small
// graphs and tests. Training itself never evaluates it.
ObjectiveReport exact_objective(const EmbeddingModel& model, const ContextPairCounts& counts,
                                const AttributedGraph& graph);

// Negative-sampling loss for one positive pair (i, j) and its negatives:
// -log s(phi_i . w_j) - sum_k log s(-phi_i . w_k).
double pair_loss(const EmbeddingModel& model, Objective which, NodeId i, std::uint32_t j,
                 std::span<const std::uint32_t> negatives);

// Analytic gradient of pair_loss. Output columns are listed in order of
// first appearance (j first); a negative drawn twice gets one summed entry.
struct PairGradients {
  std::vector<double> input;
  std::vector<std::pair<std::uint32_t, std::vector<double>>> outputs;
};

PairGradients pair_gradients(const EmbeddingModel& model, Objective which, NodeId i,
                             std::uint32_t j, std::span<const std::uint32_t> negatives);

inline PairGradients structure_grads(const EmbeddingModel& model, NodeId i, NodeId j,
                                     std::span<const std::uint32_t> negatives) {
  return pair_gradients(model, Objective::kStructure, i, j, negatives);
}
inline PairGradients attr_grads(const EmbeddingModel& model, NodeId i, AttrId j,
                                std::span<const std::uint32_t> negatives) {
  return pair_gradients(model, Objective::kAttribute, i, j, negatives);
}

// Reusable buffers so the hot loop does not allocate.
struct SgdScratch {
  std::vector<double> input_grad;
  std::vector<double> coef;
};

// One gradient-descent step on pair_loss: every parameter the loss touches
// moves by -eta * gradient, with all gradients taken at the pre-step values.
void sgd_step(EmbeddingModel& model, Objective which, NodeId i, std::uint32_t j,
              std::span<const std::uint32_t> negatives, double eta, SgdScratch& scratch);

inline void sgd_step_structure(EmbeddingModel& model, NodeId i, NodeId j,
                               std::span<const std::uint32_t> negatives, double eta) {
  SgdScratch scratch;
  sgd_step(model, Objective::kStructure, i, j, negatives, eta, scratch);
}
inline void sgd_step_attr(EmbeddingModel& model, NodeId i, AttrId j,
                          std::span<const std::uint32_t> negatives, double eta) {
  SgdScratch scratch;
  sgd_step(model, Objective::kAttribute, i, j, negatives, eta, scratch);
}

// Staircase linear decay: eta0 * (1 - tau'/I) with tau' = tau rounded down
// to a multiple of `period`, never below `floor`.
double lr_schedule(double eta0, std::uint64_t tau, std::uint64_t max_iters, std::uint64_t period,
                   double floor);

// `|V| d` header then `node f1 .. fd` per node, 6 decimals, ascending id.
std::string format_embeddings(const AttributedGraph& graph, const EmbeddingModel& model);

}  // namespace inembed
