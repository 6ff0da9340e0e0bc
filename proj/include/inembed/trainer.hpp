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
#include <functional>
#include <vector>

#include "inembed/graph.hpp"
#include "inembed/model.hpp"
#include "inembed/sampling.hpp"
#include "inembed/walks.hpp"

namespace inembed {

struct TrainConfig {
  std::size_t walk_len = 100;            // L
  std::size_t walks_per_node = 40;       // gamma
  std::size_t window = 10;               // t
  std::size_t dim = 256;                 // d
  std::size_t negatives = 5;             // K
  std::uint64_t max_iters = 100'000'000; // I
  double lr0 = 0.025;
  std::uint64_t lr_update_period = 10'000;
  double lr_floor_ratio = 1e-4;          // floor = lr0 * ratio
  std::uint64_t seed = 1;
  double structure_prob = 0.5;           // coin threshold between the two objectives
  // 1 is the deterministic mode. More threads run lock-free Hogwild updates
  // with no reproducibility guarantee.
  std::size_t threads = 1;

  double lr_floor() const { return lr0 * lr_floor_ratio; }
  // Throws ValidationError on out-of-range values.
  void validate() const;
};

// Everything sampled from during SGD, built once from the graph.
struct TrainingData {
  ContextPairCounts counts;
  // Node-context pairs weighted by n(i, j); index into counts.entries().
  AliasTable structure_pairs;
  // Observed (node, attribute) pairs weighted by X_ij; only X_ij > 0 entries.
  std::vector<std::pair<NodeId, AttrId>> attr_pairs;
  AliasTable attribute_pairs;
  NegativeSampler node_negatives;
  NegativeSampler attr_negatives;

  bool has_structure() const { return !counts.empty(); }
  bool has_attributes() const { return !attr_pairs.empty(); }
};

struct TrainStats {
  std::uint64_t structure_steps = 0;
  std::uint64_t attribute_steps = 0;
  double walk_seconds = 0.0;
  double count_seconds = 0.0;
  double table_seconds = 0.0;
  double sgd_seconds = 0.0;
};

// Called with the iteration count before training, every `every`
// iterations, and at the end. Deterministic mode only.
struct TrainObserver {
  std::uint64_t every = 0;
  std::function<void(std::uint64_t iteration, const EmbeddingModel& model)> callback;
};

struct TrainResult {
  EmbeddingModel model;
  TrainStats stats;
};

// Walks, context counts, pair tables and negative samplers. Throws when
// the graph offers neither context pairs nor positive attribute mass.
TrainingData build_training_data(const AttributedGraph& graph, const TrainConfig& config,
                                 TrainStats* stats = nullptr);

// The alternating SGD loop over prepared data. When one side has no pairs
// every iteration goes to the other side.
TrainResult train(const AttributedGraph& graph, const TrainingData& data, const TrainConfig& config,
                  const TrainObserver* observer = nullptr);

TrainResult train(const AttributedGraph& graph, const TrainConfig& config,
                  const TrainObserver* observer = nullptr);

}  // namespace inembed
