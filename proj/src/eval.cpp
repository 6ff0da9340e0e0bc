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

#include "inembed/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "inembed/error.hpp"
#include "inembed/rng.hpp"

namespace inembed {

EdgeOperator parse_edge_operator(std::string_view name) {
  if (name == "average") return EdgeOperator::kAverage;
  if (name == "hadamard") return EdgeOperator::kHadamard;
  if (name == "l1" || name == "weighted_l1") return EdgeOperator::kWeightedL1;
  if (name == "l2" || name == "weighted_l2") return EdgeOperator::kWeightedL2;
  throw ValidationError("unknown edge operator '" + std::string(name) + "'");
}

std::string_view edge_operator_name(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::kAverage: return "average";
    case EdgeOperator::kHadamard: return "hadamard";
    case EdgeOperator::kWeightedL1: return "l1";
    case EdgeOperator::kWeightedL2: return "l2";
  }
  return "?";
}

void edge_feature(EdgeOperator op, std::span<const double> a, std::span<const double> b,
                  std::span<double> out) {
  if (a.size() != b.size() || out.size() != a.size()) {
    throw ValidationError("edge feature operands differ in dimension");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    switch (op) {
      case EdgeOperator::kAverage: out[k] = (a[k] + b[k]) / 2.0; break;
      case EdgeOperator::kHadamard: out[k] = a[k] * b[k]; break;
      case EdgeOperator::kWeightedL1: out[k] = std::abs(a[k] - b[k]); break;
      case EdgeOperator::kWeightedL2: out[k] = (a[k] - b[k]) * (a[k] - b[k]); break;
    }
  }
}

std::vector<double> edge_feature(EdgeOperator op, std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  edge_feature(op, a, b, out);
  return out;
}

Heuristic parse_heuristic(std::string_view name) {
  if (name == "common" || name == "common_neighbors") return Heuristic::kCommonNeighbors;
  if (name == "jaccard") return Heuristic::kJaccard;
  if (name == "adamic_adar" || name == "adamic") return Heuristic::kAdamicAdar;
  if (name == "preferential" || name == "preferential_attachment") return Heuristic::kPreferentialAttachment;
  throw ValidationError("unknown heuristic '" + std::string(name) + "'");
}

std::string_view heuristic_name(Heuristic h) {
  switch (h) {
    case Heuristic::kCommonNeighbors: return "common";
    case Heuristic::kJaccard: return "jaccard";
    case Heuristic::kAdamicAdar: return "adamic_adar";
    case Heuristic::kPreferentialAttachment: return "preferential";
  }
  return "?";
}

double heuristic_score(const AttributedGraph& graph, NodeId i, NodeId j, Heuristic h) {
  const auto a = graph.neighbors(i);
  const auto b = graph.neighbors(j);
  if (h == Heuristic::kPreferentialAttachment) {
    return static_cast<double>(a.size()) * static_cast<double>(b.size());
  }
  std::size_t common = 0;
  double adamic = 0.0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (x->node < y->node) {
      ++x;
    } else if (y->node < x->node) {
      ++y;
    } else {
      ++common;
      const std::size_t deg = graph.degree(x->node);
      if (deg > 1) adamic += 1.0 / std::log(static_cast<double>(deg));
      ++x;
      ++y;
    }
  }
  switch (h) {
    case Heuristic::kCommonNeighbors:
      return static_cast<double>(common);
    case Heuristic::kJaccard: {
      const std::size_t uni = a.size() + b.size() - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    case Heuristic::kAdamicAdar:
      return adamic;
    case Heuristic::kPreferentialAttachment:
      break;
  }
  return 0.0;
}

std::size_t PairDataset::positives() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const LabeledPair& p) { return p.positive; }));
}

namespace {

void add_with_negative(PairDataset& out, const Edge& e, const AttributedGraph& forbidden, Rng& rng) {
  const std::size_t n = forbidden.node_count();
  out.pairs.push_back({e.u, e.v, true});
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto k = static_cast<NodeId>(rng.below(n));
    if (k == e.u || forbidden.has_edge(e.u, k)) continue;
    out.pairs.push_back({e.u, k, false});
    return;
  }
  throw Error("could not sample a negative pair for node '" + forbidden.node_vocab().name(e.u) +
              "' after 1000 attempts");
}

std::vector<Edge> subsample_edges(std::vector<Edge> edges, double fraction, Rng& rng) {
  if (fraction >= 1.0) return edges;
  const std::size_t keep = fraction_count(fraction, edges.size());
  for (std::size_t i = 0; i < keep; ++i) {
    std::swap(edges[i], edges[i + static_cast<std::size_t>(rng.below(edges.size() - i))]);
  }
  edges.resize(keep);
  return edges;
}

}  // namespace

PairDatasets build_pair_datasets(const AttributedGraph& full, const AttributedGraph& corrupted,
                                 std::span<const Edge> removed, std::uint64_t seed, double subsample) {
  if (!(subsample > 0.0 && subsample <= 1.0)) throw ValidationError("subsample must be in (0, 1]");
  if (full.node_count() != corrupted.node_count()) {
    throw ValidationError("full and corrupted graphs differ in node count");
  }
  PairDatasets out;
  out.train.split = PairDataset::Split::kTrain;
  out.test.split = PairDataset::Split::kTest;

  Rng test_rng(derive_seed(seed, "test-pairs"));
  const auto test_pos = subsample_edges(std::vector<Edge>(removed.begin(), removed.end()), subsample, test_rng);
  out.test.pairs.reserve(2 * test_pos.size());
  for (const auto& e : test_pos) add_with_negative(out.test, e, full, test_rng);

  Rng train_rng(derive_seed(seed, "train-pairs"));
  const auto train_pos = subsample_edges(corrupted.edges(), subsample, train_rng);
  out.train.pairs.reserve(2 * train_pos.size());
  for (const auto& e : train_pos) add_with_negative(out.train, e, corrupted, train_rng);
  return out;
}

std::vector<std::vector<double>> pair_features(const EmbeddingModel& model, EdgeOperator op,
                                               const PairDataset& data) {
  std::vector<std::vector<double>> out;
  out.reserve(data.pairs.size());
  for (const auto& p : data.pairs) out.push_back(edge_feature(op, model.input(p.u), model.input(p.v)));
  return out;
}

std::vector<bool> pair_labels(const PairDataset& data) {
  std::vector<bool> out;
  out.reserve(data.pairs.size());
  for (const auto& p : data.pairs) out.push_back(p.positive);
  return out;
}

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw ValidationError("scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1..j share their average.
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        pos_rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ValidationError("AUC needs both positive and negative labels");
  const double np = static_cast<double>(n_pos);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

LinkScorer parse_link_scorer(std::string_view text) {
  constexpr std::string_view prefix = "heuristic:";
  if (text.substr(0, prefix.size()) == prefix) return parse_heuristic(text.substr(prefix.size()));
  return parse_edge_operator(text);
}

std::string link_scorer_name(const LinkScorer& scorer) {
  if (const auto* op = std::get_if<EdgeOperator>(&scorer)) return std::string(edge_operator_name(*op));
  return "heuristic:" + std::string(heuristic_name(std::get<Heuristic>(scorer)));
}

LinkPredictionReport run_link_prediction(const AttributedGraph& full, const LinkPredictionOptions& options) {
  LinkPredictionReport report;
  auto removal = remove_edges_random(full, options.remove_fraction, derive_seed(options.seed, "remove"));
  if (removal.removed.empty()) throw ValidationError("edge removal left no held-out edges to evaluate");
  report.removed_edges = removal.removed.size();

  AttributedGraph observed = std::move(removal.graph);
  if (options.attr_corruption) {
    CorruptionSpec spec = *options.attr_corruption;
    if (spec.kind == CorruptionKind::kEdgeRandom) {
      throw ValidationError("attribute corruption cannot be edge_random");
    }
    observed = apply_corruption(observed, spec, options.labels).graph;
  }
  if (options.structure_only) {
    GraphBuilder builder(observed);
    for (NodeId i = 0; i < observed.node_count(); ++i) builder.clear_node_attrs(i);
    observed = builder.build();
  }

  const auto data = build_pair_datasets(full, observed, removal.removed,
                                        derive_seed(options.seed, "pairs"), options.subsample);
  report.train_pairs = data.train.pairs.size();
  report.test_pairs = data.test.pairs.size();
  const auto test_labels = pair_labels(data.test);

  const bool needs_model = std::any_of(options.scorers.begin(), options.scorers.end(), [](const auto& s) {
    return std::holds_alternative<EdgeOperator>(s);
  });
  std::optional<TrainResult> trained;
  if (needs_model) trained = train(observed, options.train);
  if (trained) report.train_stats = trained->stats;
  const std::string method = options.structure_only || observed.observed_attr_count() == 0 ? "structure" : "joint";

  for (const auto& scorer : options.scorers) {
    std::vector<double> scores;
    scores.reserve(data.test.pairs.size());
    if (const auto* op = std::get_if<EdgeOperator>(&scorer)) {
      const auto train_x = pair_features(trained->model, *op, data.train);
      const auto train_y = pair_labels(data.train);
      const auto clf = LinkClassifier::fit(train_x, train_y, options.classifier);
      for (const auto& p : data.test.pairs) {
        scores.push_back(clf.decision(edge_feature(*op, trained->model.input(p.u), trained->model.input(p.v))));
      }
      report.rows.push_back({link_scorer_name(scorer), method, auc(scores, test_labels)});
    } else {
      const Heuristic h = std::get<Heuristic>(scorer);
      for (const auto& p : data.test.pairs) scores.push_back(heuristic_score(observed, p.u, p.v, h));
      report.rows.push_back({link_scorer_name(scorer), "heuristic", auc(scores, test_labels)});
    }
  }
  return report;
}

}  // namespace inembed
