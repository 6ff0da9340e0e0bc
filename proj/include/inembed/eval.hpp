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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "inembed/graph.hpp"
#include "inembed/incomplete.hpp"
#include "inembed/model.hpp"
#include "inembed/trainer.hpp"

namespace inembed {

// Binary operators turning two node embeddings into an edge feature.
enum class EdgeOperator { kAverage, kHadamard, kWeightedL1, kWeightedL2 };

EdgeOperator parse_edge_operator(std::string_view name);  // average|hadamard|l1|l2
std::string_view edge_operator_name(EdgeOperator op);

// Throws ValidationError on a dimension mismatch.
std::vector<double> edge_feature(EdgeOperator op, std::span<const double> a, std::span<const double> b);
void edge_feature(EdgeOperator op, std::span<const double> a, std::span<const double> b,
                  std::span<double> out);

enum class Heuristic { kCommonNeighbors, kJaccard, kAdamicAdar, kPreferentialAttachment };

Heuristic parse_heuristic(std::string_view name);  // common|jaccard|adamic_adar|preferential
std::string_view heuristic_name(Heuristic h);

// Neighborhood-overlap scores on the unweighted neighbor sets. Adamic-Adar
// uses the natural log and skips shared neighbors of degree <= 1; Jaccard
// of two empty neighborhoods is 0.
double heuristic_score(const AttributedGraph& graph, NodeId i, NodeId j, Heuristic h);

struct LabeledPair {
  NodeId u;
  NodeId v;
  bool positive;
  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

struct PairDataset {
  enum class Split { kTrain, kTest };
  Split split = Split::kTrain;
  std::vector<LabeledPair> pairs;

  std::size_t positives() const;
};

struct PairDatasets {
  PairDataset train;
  PairDataset test;
};

// Test positives are the removed edges; train positives the remaining
// edges of `corrupted`. Each positive (i, j) is followed by one negative
// (i, k), k != i, that is not an edge of `full` (test) or of `corrupted`
// (train). `subsample` < 1 keeps that fraction of positives per split.
// Throws after 1000 failed draws for one negative.
PairDatasets build_pair_datasets(const AttributedGraph& full, const AttributedGraph& corrupted,
                                 std::span<const Edge> removed, std::uint64_t seed,
                                 double subsample = 1.0);

struct ClassifierConfig {
  double l2 = 1e-3;
  std::size_t max_iters = 100;  // Newton iterations
  double tolerance = 1e-10;
};

// L2-regularized logistic regression on standardized features, fitted by
// damped Newton iterations on the mean log-loss.
class LinkClassifier {
 public:
  static LinkClassifier fit(std::span<const std::vector<double>> features, const std::vector<bool>& labels,
                            const ClassifierConfig& config = {});

  // Signed margin; larger means more likely positive.
  double decision(std::span<const double> features) const;
  // Weights and bias expressed on the raw (unstandardized) features.
  std::vector<double> raw_weights() const;
  double raw_bias() const;
  std::size_t iterations() const { return iterations_; }

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  std::size_t iterations_ = 0;
};

std::vector<std::vector<double>> pair_features(const EmbeddingModel& model, EdgeOperator op,
                                               const PairDataset& data);
std::vector<bool> pair_labels(const PairDataset& data);

// Mann-Whitney AUC: P(score+ > score-) + P(tie) / 2. Throws when a class is missing.
double auc(std::span<const double> scores, const std::vector<bool>& labels);

// One scoring route: an embedding edge operator or a graph heuristic.
using LinkScorer = std::variant<EdgeOperator, Heuristic>;
// `hadamard`, `l1`, ..., or `heuristic:<name>`.
LinkScorer parse_link_scorer(std::string_view text);
std::string link_scorer_name(const LinkScorer& scorer);

struct LinkPredictionOptions {
  double remove_fraction = 0.3;
  std::uint64_t seed = 1;
  std::vector<LinkScorer> scorers{EdgeOperator::kHadamard};
  // Applied to the attributes of the edge-removed graph.
  std::optional<CorruptionSpec> attr_corruption;
  const LabelAssignment* labels = nullptr;  // for col_important
  // Drop all attributes before training: the structure-only baseline.
  bool structure_only = false;
  double subsample = 1.0;
  TrainConfig train;
  ClassifierConfig classifier;
};

struct LinkPredictionRow {
  std::string scorer;
  std::string method;  // joint | structure | heuristic
  double auc = 0.0;
};

struct LinkPredictionReport {
  std::vector<LinkPredictionRow> rows;
  std::size_t removed_edges = 0;
  std::size_t train_pairs = 0;
  std::size_t test_pairs = 0;
  TrainStats train_stats;
};

// Remove edges, optionally corrupt attributes, build pair datasets, train
// embeddings on what is left and score the held-out pairs.
LinkPredictionReport run_link_prediction(const AttributedGraph& full, const LinkPredictionOptions& options);

}  // namespace inembed
