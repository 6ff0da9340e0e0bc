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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "inembed/error.hpp"
#include "inembed/eval.hpp"
#include "inembed/rng.hpp"
#include "inembed/synthetic.hpp"
#include "oracles.hpp"

using namespace inembed;

namespace {

std::vector<double> feature(EdgeOperator op, std::vector<double> a, std::vector<double> b) {
  return edge_feature(op, a, b);
}

AttributedGraph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node("n" + std::to_string(i));
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < p) b.add_edge(i, j);
  return b.build();
}

double accuracy(const LinkClassifier& clf, const std::vector<std::vector<double>>& x, const std::vector<bool>& y) {
  std::size_t hit = 0;
  for (std::size_t r = 0; r < x.size(); ++r) hit += (clf.decision(x[r]) > 0) == y[r];
  return static_cast<double>(hit) / static_cast<double>(x.size());
}

}  // namespace

TEST_CASE("edge operators") {
  CHECK(feature(EdgeOperator::kHadamard, {1, 2}, {3, 4}) == std::vector<double>{3, 8});
  CHECK(feature(EdgeOperator::kAverage, {1, 2}, {3, 4}) == std::vector<double>{2, 3});
  CHECK(feature(EdgeOperator::kWeightedL1, {1, 2}, {3, 5}) == std::vector<double>{2, 3});
  CHECK(feature(EdgeOperator::kWeightedL2, {1, 2}, {3, 5}) == std::vector<double>{4, 9});
  CHECK(feature(EdgeOperator::kWeightedL1, {0.3, -2}, {0.3, -2}) == std::vector<double>{0, 0});
  Rng rng(1);
  for (auto op : {EdgeOperator::kAverage, EdgeOperator::kHadamard, EdgeOperator::kWeightedL1, EdgeOperator::kWeightedL2}) {
    std::vector<double> a(7), b(7);
    for (auto& x : a) x = rng.uniform() - 0.5;
    for (auto& x : b) x = rng.uniform() - 0.5;
    CHECK(edge_feature(op, a, b) == edge_feature(op, b, a));
    CHECK(parse_edge_operator(edge_operator_name(op)) == op);
  }
  CHECK_THROWS_AS(feature(EdgeOperator::kHadamard, {1}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(parse_edge_operator("cosine"), ValidationError);
}

TEST_CASE("heuristics on a small graph") {
  // a-b, a-c, b-c, c-d, b-e
  const auto g = parse_edges("a b\na c\nb c\nc d\nb e\n");
  const NodeId a = 0, b = 1, c = 2, d = 3;
  CHECK(heuristic_score(g, a, d, Heuristic::kCommonNeighbors) == 1.0);
  CHECK(heuristic_score(g, a, d, Heuristic::kJaccard) == doctest::Approx(1.0 / 2));
  CHECK(heuristic_score(g, b, c, Heuristic::kJaccard) == doctest::Approx(1.0 / 5));
  CHECK(heuristic_score(g, a, d, Heuristic::kPreferentialAttachment) == 2.0);
  CHECK(heuristic_score(g, b, c, Heuristic::kPreferentialAttachment) == 9.0);

  // N(i) = {1, 2}, N(j) = {2, 3}
  const auto sq = parse_edges("i n1\ni n2\nj n2\nj n3\n");
  const auto si = *sq.node_vocab().find("i"), sj = *sq.node_vocab().find("j");
  CHECK(heuristic_score(sq, si, sj, Heuristic::kCommonNeighbors) == 1.0);
  CHECK(heuristic_score(sq, si, sj, Heuristic::kJaccard) == doctest::Approx(1.0 / 3));
  CHECK(heuristic_score(sq, si, sj, Heuristic::kPreferentialAttachment) == 4.0);
  CHECK(heuristic_score(sq, si, *sq.node_vocab().find("n3"), Heuristic::kAdamicAdar) == 0.0);

  const auto tri = parse_edges("x y\ny z\nz x\n");
  CHECK(heuristic_score(tri, 0, 1, Heuristic::kAdamicAdar) == doctest::Approx(1.4426950408889634).epsilon(1e-14));

  const auto iso = parse_edges("p\nq\n");
  CHECK(heuristic_score(iso, 0, 1, Heuristic::kJaccard) == 0.0);

  for (auto h : {Heuristic::kCommonNeighbors, Heuristic::kJaccard, Heuristic::kAdamicAdar,
                 Heuristic::kPreferentialAttachment}) {
    CHECK(parse_heuristic(heuristic_name(h)) == h);
  }
}

TEST_CASE("heuristics match set arithmetic") {
  const auto g = random_graph(30, 0.2, 4);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto i = static_cast<NodeId>(rng.below(30)), j = static_cast<NodeId>(rng.below(30));
    const auto ni = oracle::neighbor_set(g, i), nj = oracle::neighbor_set(g, j);
    std::set<NodeId> inter, uni;
    std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::inserter(inter, inter.end()));
    std::set_union(ni.begin(), ni.end(), nj.begin(), nj.end(), std::inserter(uni, uni.end()));
    double aa = 0.0;
    for (auto z : inter) {
      const auto dz = oracle::neighbor_set(g, z).size();
      if (dz > 1) aa += 1.0 / std::log(static_cast<double>(dz));
    }
    CHECK(heuristic_score(g, i, j, Heuristic::kCommonNeighbors) == static_cast<double>(inter.size()));
    CHECK(heuristic_score(g, i, j, Heuristic::kJaccard) ==
          doctest::Approx(uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size())));
    CHECK(heuristic_score(g, i, j, Heuristic::kAdamicAdar) == doctest::Approx(aa).epsilon(1e-12));
    CHECK(heuristic_score(g, i, j, Heuristic::kPreferentialAttachment) ==
          static_cast<double>(ni.size() * nj.size()));
  }
}

TEST_CASE("AUC") {
  CHECK(auc(std::vector<double>{0.9, 0.8, 0.1, 0.2}, {true, true, false, false}) == 1.0);
  CHECK(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, {true, false, true, false}) == 0.5);
  CHECK(auc(std::vector<double>{0.9, 0.3, 0.5, 0.1}, {true, true, false, false}) == 0.75);
  CHECK_THROWS_AS(auc(std::vector<double>{1, 2}, {true, true}), ValidationError);

  Rng rng(6);
  std::vector<double> s(300);
  std::vector<bool> y(300);
  for (std::size_t k = 0; k < s.size(); ++k) {
    y[k] = rng.uniform() < 0.4;
    s[k] = std::round((rng.uniform() + (y[k] ? 0.3 : 0.0)) * 20.0);  // plenty of ties
  }
  const double base = auc(s, y);
  std::vector<double> t(s.size()), neg(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    t[k] = std::exp(s[k] / 3.0) + 7.0;
    neg[k] = -s[k];
  }
  CHECK(auc(t, y) == doctest::Approx(base).epsilon(1e-15));
  CHECK(base + auc(neg, y) == doctest::Approx(1.0).epsilon(1e-15));

  // Brute force over all positive/negative pairs.
  double wins = 0, total = 0;
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (!y[p]) continue;
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (y[q]) continue;
      wins += s[p] > s[q] ? 1.0 : s[p] == s[q] ? 0.5 : 0.0;
      total += 1;
    }
  }
  CHECK(base == doctest::Approx(wins / total).epsilon(1e-12));
}

TEST_CASE("pair datasets") {
  const auto full = random_graph(60, 0.1, 7);
  const auto removal = remove_edges_random(full, 0.3, 8);
  const auto data = build_pair_datasets(full, removal.graph, removal.removed, 9);
  CHECK(data.test.pairs.size() == 2 * removal.removed.size());
  CHECK(data.train.pairs.size() == 2 * removal.graph.edge_count());
  CHECK(data.test.positives() == removal.removed.size());
  CHECK(data.test.split == PairDataset::Split::kTest);
  for (std::size_t k = 0; k < data.test.pairs.size(); ++k) {
    const auto& p = data.test.pairs[k];
    CHECK(p.positive == (k % 2 == 0));
    CHECK(p.u != p.v);
    if (!p.positive) CHECK_FALSE(full.has_edge(p.u, p.v));
    if (p.positive) CHECK_FALSE(removal.graph.has_edge(p.u, p.v));
  }
  for (const auto& p : data.train.pairs) {
    CHECK(removal.graph.has_edge(p.u, p.v) == p.positive);
  }
  const auto again = build_pair_datasets(full, removal.graph, removal.removed, 9);
  CHECK(again.test.pairs == data.test.pairs);
  CHECK(again.train.pairs == data.train.pairs);

  const auto half = build_pair_datasets(full, removal.graph, removal.removed, 9, 0.5);
  CHECK(half.test.positives() == fraction_count(0.5, removal.removed.size()));
}

TEST_CASE("classifier on separable data") {
  Rng rng(10);
  std::vector<std::vector<double>> x;
  std::vector<bool> y;
  for (int k = 0; k < 200; ++k) {
    const bool pos = k % 2 == 0;
    x.push_back({(pos ? 2.0 : -2.0) + rng.uniform() - 0.5, rng.uniform() * 100.0});
    y.push_back(pos);
  }
  const auto clf = LinkClassifier::fit(x, y);
  CHECK(accuracy(clf, x, y) == 1.0);
  CHECK(clf.iterations() >= 1);
  // Raw-coordinate parameters reproduce the decision.
  const auto w = clf.raw_weights();
  for (int k = 0; k < 10; ++k)
    CHECK(clf.decision(x[k]) == doctest::Approx(w[0] * x[k][0] + w[1] * x[k][1] + clf.raw_bias()).epsilon(1e-9));
}

TEST_CASE("classifier on shuffled labels is at chance") {
  Rng rng(11);
  std::vector<std::vector<double>> x, xt;
  std::vector<bool> y, yt;
  for (int k = 0; k < 4000; ++k) {
    std::vector<double> f{rng.uniform(), rng.uniform(), rng.uniform()};
    const bool lab = rng.uniform() < 0.5;
    if (k < 2000) {
      x.push_back(f);
      y.push_back(lab);
    } else {
      xt.push_back(f);
      yt.push_back(lab);
    }
  }
  const auto clf = LinkClassifier::fit(x, y);
  CHECK(std::abs(accuracy(clf, xt, yt) - 0.5) < 0.05);
}

TEST_CASE("duplicating the training set leaves the fit unchanged") {
  Rng rng(12);
  std::vector<std::vector<double>> x;
  std::vector<bool> y;
  for (int k = 0; k < 150; ++k) {
    const double a = rng.uniform(), b = rng.uniform();
    x.push_back({a, b});
    y.push_back(a + 0.5 * b + 0.3 * (rng.uniform() - 0.5) > 0.75);
  }
  auto x2 = x;
  x2.insert(x2.end(), x.begin(), x.end());
  auto y2 = y;
  y2.insert(y2.end(), y.begin(), y.end());
  const auto c1 = LinkClassifier::fit(x, y), c2 = LinkClassifier::fit(x2, y2);
  for (std::size_t k = 0; k < 2; ++k) CHECK(c1.raw_weights()[k] == doctest::Approx(c2.raw_weights()[k]).epsilon(1e-6));
  CHECK(c1.raw_bias() == doctest::Approx(c2.raw_bias()).epsilon(1e-6));
}

TEST_CASE("identical features warn and still fit") {
  std::vector<std::string> warnings;
  auto previous = set_warning_handler([&](std::string_view w) { warnings.emplace_back(w); });
  std::vector<std::vector<double>> x(10, std::vector<double>{1.0, 1.0});
  std::vector<bool> y{true, false, true, false, true, false, true, true, false, true};
  const auto clf = LinkClassifier::fit(x, y);
  set_warning_handler(previous);
  CHECK(warnings.size() == 1);
  CHECK(std::isfinite(clf.decision(x[0])));
  CHECK(clf.decision(x[0]) > 0.0);  // 6 of 10 positive
}

TEST_CASE("link scorer parsing") {
  CHECK(std::get<EdgeOperator>(parse_link_scorer("l2")) == EdgeOperator::kWeightedL2);
  CHECK(std::get<Heuristic>(parse_link_scorer("heuristic:jaccard")) == Heuristic::kJaccard);
  CHECK(link_scorer_name(parse_link_scorer("heuristic:adamic_adar")) == "heuristic:adamic_adar");
  CHECK_THROWS_AS(parse_link_scorer("heuristic:nope"), ValidationError);
}

TEST_CASE("end-to-end link prediction on a block graph") {
  BlockGraphConfig bc;
  bc.nodes_per_block = 40;
  bc.p_intra = 0.25;
  bc.p_inter = 0.02;
  bc.attrs_per_block = 10;
  bc.seed = 13;
  const auto lg = make_block_graph(bc);
  LinkPredictionOptions opt;
  opt.seed = 2;
  opt.scorers = {EdgeOperator::kHadamard, Heuristic::kCommonNeighbors};
  opt.train.dim = 16;
  opt.train.walk_len = 20;
  opt.train.walks_per_node = 5;
  opt.train.window = 5;
  opt.train.max_iters = 100'000;
  const auto rep = run_link_prediction(lg.graph, opt);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].scorer == "hadamard");
  CHECK(rep.rows[0].method == "joint");
  CHECK(rep.rows[1].method == "heuristic");
  CHECK(rep.removed_edges == fraction_count(0.3, lg.graph.edge_count()));
  CHECK(rep.test_pairs == 2 * rep.removed_edges);
  for (const auto& r : rep.rows) CHECK((r.auc >= 0.0 && r.auc <= 1.0));
  CHECK(rep.rows[0].auc > 0.6);

  opt.structure_only = true;
  const auto base = run_link_prediction(lg.graph, opt);
  CHECK(base.rows[0].method == "structure");
  CHECK(base.test_pairs == rep.test_pairs);
}
