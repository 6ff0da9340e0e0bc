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

#include "inembed/trainer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "inembed/error.hpp"
#include "inembed/rng.hpp"

namespace inembed {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared state of one SGD run. Workers update `model` without locks.
struct SgdRun {
  const TrainingData& data;
  const TrainConfig& config;
  EmbeddingModel& model;
  std::atomic<std::uint64_t> progress{0};
  std::atomic<std::uint64_t> structure_steps{0};
  std::atomic<std::uint64_t> attribute_steps{0};

  // Runs iterations [begin, end) of the global schedule with its own stream.
  void run(std::uint64_t begin, std::uint64_t end, std::uint64_t worker,
           const TrainObserver* observer) {
    Rng rng(derive_seed(config.seed, "train", worker));
    SgdScratch scratch;
    std::vector<std::uint32_t> negs(config.negatives);
    const auto& counts = data.counts.entries();
    const bool both = data.has_structure() && data.has_attributes();
    const bool shared = config.threads > 1;
    std::uint64_t structure = 0;
    std::uint64_t attribute = 0;
    std::uint64_t last_sync = begin;

    for (std::uint64_t it = begin; it < end; ++it) {
      std::uint64_t tau = it;
      if (shared) {
        if (it - last_sync >= 1000) {
          progress.fetch_add(it - last_sync, std::memory_order_relaxed);
          last_sync = it;
        }
        tau = progress.load(std::memory_order_relaxed);
      }
      const double eta = lr_schedule(config.lr0, tau, config.max_iters, config.lr_update_period,
                                     config.lr_floor());
      bool structure_step = data.has_structure();
      if (both) {
        double r = rng.uniform();
        while (r == 0.0) r = rng.uniform();
        structure_step = r <= config.structure_prob;
      }
      if (structure_step) {
        const auto& pair = counts[data.structure_pairs.draw(rng)];
        data.node_negatives.draw(pair.context, negs, rng);
        sgd_step(model, Objective::kStructure, pair.center, pair.context, negs, eta, scratch);
        ++structure;
      } else {
        const auto [node, attr] = data.attr_pairs[data.attribute_pairs.draw(rng)];
        data.attr_negatives.draw(attr, negs, rng);
        sgd_step(model, Objective::kAttribute, node, attr, negs, eta, scratch);
        ++attribute;
      }
      if (observer && observer->every > 0 && (it + 1) % observer->every == 0 && it + 1 < end) {
        observer->callback(it + 1, model);
      }
    }
    if (shared) progress.fetch_add(end - last_sync, std::memory_order_relaxed);
    structure_steps.fetch_add(structure, std::memory_order_relaxed);
    attribute_steps.fetch_add(attribute, std::memory_order_relaxed);
  }
};

}  // namespace

void TrainConfig::validate() const {
  if (walk_len < 1) throw ValidationError("walk length must be >= 1");
  if (walks_per_node < 1) throw ValidationError("walks per node must be >= 1");
  if (window < 1) throw ValidationError("window must be >= 1");
  if (dim < 1) throw ValidationError("dimension must be >= 1");
  if (negatives < 1) throw ValidationError("negative count must be >= 1");
  if (max_iters < 1) throw ValidationError("iteration count must be >= 1");
  if (!(lr0 > 0.0) || !std::isfinite(lr0)) throw ValidationError("learning rate must be positive");
  if (!(lr_floor_ratio >= 0.0 && lr_floor_ratio <= 1.0)) {
    throw ValidationError("learning-rate floor ratio must be in [0, 1]");
  }
  if (!(structure_prob >= 0.0 && structure_prob <= 1.0)) {
    throw ValidationError("structure probability must be in [0, 1]");
  }
  if (threads < 1) throw ValidationError("thread count must be >= 1");
}

TrainingData build_training_data(const AttributedGraph& graph, const TrainConfig& config,
                                 TrainStats* stats) {
  config.validate();
  TrainingData data;

  auto start = Clock::now();
  WalkConfig wc{config.walk_len, config.walks_per_node, derive_seed(config.seed, "walks")};
  auto walks = generate_walks(graph, wc);
  if (stats) stats->walk_seconds = seconds_since(start);

  start = Clock::now();
  data.counts = count_context_pairs(walks, config.window, graph.node_count());
  walks.clear();
  walks.shrink_to_fit();
  if (stats) stats->count_seconds = seconds_since(start);

  start = Clock::now();
  std::vector<double> attr_mass(graph.attr_count(), 0.0);
  std::vector<double> pair_weights;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (const auto& e : graph.attrs(i)) {
      if (e.value <= 0.0) continue;  // observed zeros carry no sampling mass
      data.attr_pairs.emplace_back(i, e.attr);
      pair_weights.push_back(e.value);
      attr_mass[e.attr] += e.value;
    }
  }
  if (!data.has_structure() && !data.has_attributes()) {
    throw ValidationError("graph has neither edges nor positive attribute values to train on");
  }
  if (data.has_structure()) {
    std::vector<double> weights;
    weights.reserve(data.counts.entries().size());
    for (const auto& p : data.counts.entries()) weights.push_back(static_cast<double>(p.count));
    data.structure_pairs = AliasTable(weights);
    data.node_negatives = NegativeSampler(data.counts.center_mass());
  }
  if (data.has_attributes()) {
    data.attribute_pairs = AliasTable(pair_weights);
    data.attr_negatives = NegativeSampler(attr_mass);
    if (data.attr_negatives.positive_count() < 2) {
      throw ValidationError("attribute training needs at least two attributes with positive mass");
    }
  }
  if (stats) stats->table_seconds = seconds_since(start);
  return data;
}

TrainResult train(const AttributedGraph& graph, const TrainingData& data, const TrainConfig& config,
                  const TrainObserver* observer) {
  config.validate();
  TrainResult result;
  result.model = init_model(graph.node_count(), graph.attr_count(), config.dim,
                            derive_seed(config.seed, "init"));
  SgdRun run{data, config, result.model};

  auto start = Clock::now();
  if (config.threads == 1) {
    if (observer && observer->callback) observer->callback(0, result.model);
    run.run(0, config.max_iters, 0, observer);
    if (observer && observer->callback) observer->callback(config.max_iters, result.model);
  } else {
    std::vector<std::thread> workers;
    const std::uint64_t n = config.threads;
    for (std::uint64_t w = 0; w < n; ++w) {
      const std::uint64_t begin = config.max_iters * w / n;
      const std::uint64_t end = config.max_iters * (w + 1) / n;
      workers.emplace_back([&run, begin, end, w] { run.run(begin, end, w, nullptr); });
    }
    for (auto& t : workers) t.join();
  }
  result.stats.sgd_seconds = seconds_since(start);
  result.stats.structure_steps = run.structure_steps.load();
  result.stats.attribute_steps = run.attribute_steps.load();
  return result;
}

TrainResult train(const AttributedGraph& graph, const TrainConfig& config,
                  const TrainObserver* observer) {
  TrainStats prep;
  auto data = build_training_data(graph, config, &prep);
  auto result = train(graph, data, config, observer);
  result.stats.walk_seconds = prep.walk_seconds;
  result.stats.count_seconds = prep.count_seconds;
  result.stats.table_seconds = prep.table_seconds;
  return result;
}

}  // namespace inembed
