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

#include <cmath>
#include <map>

#include "inembed/graph.hpp"
#include "inembed/model.hpp"
#include "inembed/rng.hpp"
#include "gradcheck.hpp"
#include "oracles.hpp"

using namespace inembed;

namespace {

EmbeddingModel random_model(std::size_t v, std::size_t a, std::size_t d, Rng& rng, double scale = 1.0) {
  EmbeddingModel m(v, a, d);
  for (auto& x : m.input_matrix()) x = (rng.uniform() - 0.5) * scale;
  for (auto& x : m.output_matrix(Objective::kStructure)) x = (rng.uniform() - 0.5) * scale;
  for (auto& x : m.output_matrix(Objective::kAttribute)) x = (rng.uniform() - 0.5) * scale;
  return m;
}

struct Instance {
  AttributedGraph graph;
  ContextPairCounts counts;
  std::map<std::pair<NodeId, NodeId>, double> count_map;
};

Instance random_instance(Rng& rng, std::size_t v, std::size_t a, bool with_attrs = true) {
  GraphBuilder b;
  for (std::size_t i = 0; i < v; ++i) b.add_node("n" + std::to_string(i));
  for (std::size_t j = 0; j < a; ++j) b.add_attr("a" + std::to_string(j));
  if (with_attrs) {
    for (NodeId i = 0; i < v; ++i)
      for (AttrId j = 0; j < a; ++j)
        if (rng.uniform() < 0.5) b.set_attr(i, j, static_cast<double>(rng.below(4)));
  }
  Instance inst;
  inst.graph = b.build();
  std::vector<ContextPair> entries;
  for (NodeId i = 0; i < v; ++i)
    for (NodeId j = i + 1; j < v; ++j)
      if (rng.uniform() < 0.6) {
        const auto c = 1 + rng.below(9);
        entries.push_back({i, j, c});
        entries.push_back({j, i, c});
        inst.count_map[{i, j}] = static_cast<double>(c);
        inst.count_map[{j, i}] = static_cast<double>(c);
      }
  if (entries.empty()) {
    entries.push_back({0, 1, 1});
    entries.push_back({1, 0, 1});
    inst.count_map[{0, 1}] = 1;
    inst.count_map[{1, 0}] = 1;
  }
  inst.counts = ContextPairCounts(v, entries);
  return inst;
}

}  // namespace

TEST_CASE("init_model ranges, zero outputs and determinism") {
  auto m = init_model(10, 4, 4, 123);
  for (double x : m.input_matrix()) CHECK(std::abs(x) < 0.125);
  for (double x : m.output_matrix(Objective::kStructure)) CHECK(x == 0.0);
  for (double x : m.output_matrix(Objective::kAttribute)) CHECK(x == 0.0);
  CHECK(m == init_model(10, 4, 4, 123));
  CHECK_FALSE(m == init_model(10, 4, 4, 124));
}

TEST_CASE("embedding is the input row") {
  Rng rng(1);
  auto m = random_model(5, 2, 3, rng);
  auto row = m.input(3);
  CHECK(row.data() == m.input_matrix().data() + 9);
}

TEST_CASE("stable sigmoid and log-sigmoid") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(800.0) == 1.0);
  CHECK(sigmoid(-800.0) == 0.0);
  CHECK(std::isfinite(log_sigmoid(-800.0)));
  CHECK(log_sigmoid(-800.0) == doctest::Approx(-800.0));
  CHECK(log_sigmoid(3.0) == doctest::Approx(std::log(1.0 / (1.0 + std::exp(-3.0)))).epsilon(1e-14));
}

TEST_CASE("softmax probabilities") {
  SUBCASE("zero outputs are uniform") {
    auto m = init_model(7, 3, 5, 9);
    CHECK(prob_context(m, 2, 4) == doctest::Approx(1.0 / 7).epsilon(1e-14));
    CHECK(prob_attr(m, 2, 1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  }
  SUBCASE("two nodes with logits (1, 0)") {
    EmbeddingModel m(2, 1, 1);
    m.input(0)[0] = 1.0;
    m.output(Objective::kStructure, 0)[0] = 1.0;
    CHECK(prob_context(m, 0, 0) == doctest::Approx(0.7310585786300049).epsilon(1e-14));
  }
  SUBCASE("single attribute has probability one") {
    Rng rng(2);
    auto m = random_model(3, 1, 4, rng);
    CHECK(prob_attr(m, 1, 0) == 1.0);
  }
  SUBCASE("normalization on random models") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      auto m = random_model(1 + rng.below(12), 1 + rng.below(8), 1 + rng.below(16), rng, 6.0);
      for (NodeId i = 0; i < m.node_count(); ++i) {
        double s = 0.0, a = 0.0;
        for (NodeId j = 0; j < m.node_count(); ++j) s += prob_context(m, i, j);
        for (AttrId j = 0; j < m.attr_count(); ++j) a += prob_attr(m, i, j);
        CHECK(std::abs(s - 1.0) < 1e-12);
        CHECK(std::abs(a - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("uniform model objective is ln|V| + ln|A|") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t v = 2 + rng.below(9), a = 2 + rng.below(5);
    auto inst = random_instance(rng, v, a);
    auto m = init_model(v, a, 1 + rng.below(8), rng.next());
    auto r = exact_objective(m, inst.counts, inst.graph);
    const double expected = std::log(static_cast<double>(v)) + (r.alpha2 > 0 ? std::log(static_cast<double>(a)) : 0.0);
    CHECK(std::abs(r.total - expected) < 1e-10);
  }
}

TEST_CASE("without observed attributes only the structure term remains") {
  Rng rng(5);
  auto inst = random_instance(rng, 6, 3, false);
  auto m = random_model(6, 3, 4, rng);
  auto r = exact_objective(m, inst.counts, inst.graph);
  CHECK(r.alpha2 == 0.0);
  CHECK(r.attribute_sum == 0.0);
  CHECK(r.total == doctest::Approx(r.alpha1 * r.structure_sum).epsilon(1e-15));
}

TEST_CASE("exact objective matches the brute-force oracle") {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t v = 2 + rng.below(9), a = 1 + rng.below(6);
    auto inst = random_instance(rng, v, a);
    auto m = random_model(v, a, 1 + rng.below(10), rng, 2.0);
    auto r = exact_objective(m, inst.counts, inst.graph);
    CHECK(std::abs(r.total - oracle::full_objective(m, inst.count_map, inst.graph)) < 1e-10);
    CHECK(r.alpha1 == doctest::Approx(1.0 / static_cast<double>(inst.counts.total())));
  }
}

TEST_CASE("gradients at zero vectors vanish") {
  EmbeddingModel m(4, 3, 5);
  std::vector<std::uint32_t> negs{2, 3, 2};
  auto g = structure_grads(m, 0, 1, negs);
  for (double x : g.input) CHECK(x == 0.0);
  for (const auto& [col, grad] : g.outputs)
    for (double x : grad) CHECK(x == 0.0);
  CHECK(g.outputs.size() == 3);  // j, 2, 3
}

TEST_CASE("analytic gradients match central differences") {
  Rng rng(7);
  for (Objective which : {Objective::kStructure, Objective::kAttribute}) {
    for (std::size_t d : {2u, 8u, 32u}) {
      for (int trial = 0; trial < 10; ++trial) {
        auto m = random_model(12, 9, d, rng, 1.0);
        const std::uint32_t n_out = static_cast<std::uint32_t>(m.output_count(which));
        const auto i = static_cast<NodeId>(rng.below(12));
        const auto j = static_cast<std::uint32_t>(rng.below(n_out));
        std::vector<std::uint32_t> negs;
        while (negs.size() < 5) {
          auto k = static_cast<std::uint32_t>(rng.below(n_out));
          if (k != j) negs.push_back(k);
        }
        CHECK(oracle::max_gradient_error(m, which, i, j, negs) < 1e-5);
      }
    }
  }
}

TEST_CASE("doubling the embedding rescales the positive-column gradient") {
  Rng rng(8);
  auto m = random_model(6, 4, 8, rng);
  std::vector<std::uint32_t> negs{2, 3, 4, 5, 2};
  for (auto& x : m.input(0)) x *= 2.0;
  auto g = structure_grads(m, 0, 1, negs);
  const double s = sigmoid(oracle::plain_dot(m.input(0), m.output(Objective::kStructure, 1)));
  for (std::size_t k = 0; k < 8; ++k) CHECK(g.outputs[0].second[k] == doctest::Approx((s - 1.0) * m.input(0)[k]));
  CHECK(oracle::max_gradient_error(m, Objective::kStructure, 0, 1, negs) < 1e-5);
}

TEST_CASE("sgd step with zero rate changes nothing") {
  Rng rng(9);
  auto m = random_model(6, 4, 8, rng);
  auto before = m;
  std::vector<std::uint32_t> negs{2, 3};
  sgd_step_structure(m, 0, 1, negs, 0.0);
  sgd_step_attr(m, 0, 1, negs, 0.0);
  CHECK(m == before);
}

TEST_CASE("sgd step equals eta times the analytic gradient") {
  Rng rng(10);
  auto m = random_model(8, 5, 6, rng);
  auto before = m;
  std::vector<std::uint32_t> negs{0, 3, 3, 4};
  const double eta = 0.1;
  auto g = attr_grads(m, 2, 1, negs);
  sgd_step_attr(m, 2, 1, negs, eta);
  for (std::size_t k = 0; k < 6; ++k) CHECK(m.input(2)[k] == doctest::Approx(before.input(2)[k] - eta * g.input[k]).epsilon(1e-13));
  for (const auto& [col, grad] : g.outputs)
    for (std::size_t k = 0; k < 6; ++k)
      CHECK(m.output(Objective::kAttribute, col)[k] ==
            doctest::Approx(before.output(Objective::kAttribute, col)[k] - eta * grad[k]).epsilon(1e-13));
}

TEST_CASE("a small step decreases the pair loss") {
  Rng rng(11);
  for (Objective which : {Objective::kStructure, Objective::kAttribute}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto m = random_model(10, 10, 16, rng, 1.0);
      std::vector<std::uint32_t> negs{5, 6, 7, 8, 9};
      const double before = oracle::ns_loss(m, which, 0, 1, negs);
      SgdScratch scratch;
      sgd_step(m, which, 0, 1, negs, 1e-3, scratch);
      CHECK(oracle::ns_loss(m, which, 0, 1, negs) < before);
    }
  }
}

TEST_CASE("a step touches one input row and K+1 output columns") {
  Rng rng(12);
  auto m = random_model(10, 10, 4, rng);
  auto before = m;
  std::vector<std::uint32_t> negs{2, 4, 6, 8, 9};
  sgd_step_structure(m, 3, 1, negs, 0.05);
  std::size_t rows_changed = 0, cols_changed = 0;
  for (NodeId i = 0; i < 10; ++i) {
    auto a = m.input(i), b = before.input(i);
    rows_changed += !std::equal(a.begin(), a.end(), b.begin());
    auto c = m.output(Objective::kStructure, i), e = before.output(Objective::kStructure, i);
    cols_changed += !std::equal(c.begin(), c.end(), e.begin());
  }
  CHECK(rows_changed == 1);
  CHECK_FALSE(std::equal(m.input(3).begin(), m.input(3).end(), before.input(3).begin()));
  CHECK(cols_changed == 6);
  CHECK(m.output_matrix(Objective::kAttribute).size() == before.output_matrix(Objective::kAttribute).size());
  CHECK(std::equal(m.output_matrix(Objective::kAttribute).begin(), m.output_matrix(Objective::kAttribute).end(),
                   before.output_matrix(Objective::kAttribute).begin()));
}

TEST_CASE("learning-rate staircase") {
  const double floor = 0.025 * 1e-4;
  CHECK(lr_schedule(0.025, 0, 1'000'000, 10'000, floor) == 0.025);
  CHECK(lr_schedule(0.025, 5'000, 1'000'000, 10'000, floor) == 0.025);
  CHECK(lr_schedule(0.025, 10'000, 1'000'000, 10'000, floor) == doctest::Approx(0.025 * 0.99));
  CHECK(lr_schedule(0.025, 19'999, 1'000'000, 10'000, floor) == doctest::Approx(0.025 * 0.99));
  CHECK(lr_schedule(0.025, 1'000'000, 1'000'000, 10'000, floor) == floor);
}

TEST_CASE("embedding text format") {
  auto g = parse_edges("a b\n");
  EmbeddingModel m(2, 0, 2);
  m.input(0)[0] = 0.5;
  m.input(0)[1] = -1.25;
  m.input(1)[0] = -1e-9;
  CHECK(format_embeddings(g, m) == "2 2\na 0.500000 -1.250000\nb 0.000000 0.000000\n");
}
