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

#include "inembed/error.hpp"
#include "inembed/synthetic.hpp"
#include "inembed/trainer.hpp"

using namespace inembed;

namespace {

TrainConfig small_config() {
  TrainConfig c;
  c.walk_len = 20;
  c.walks_per_node = 4;
  c.window = 3;
  c.dim = 8;
  c.max_iters = 20'000;
  c.seed = 5;
  return c;
}

AttributedGraph small_graph() {
  BlockGraphConfig b;
  b.nodes_per_block = 20;
  b.p_intra = 0.3;
  b.p_inter = 0.05;
  b.attrs_per_block = 5;
  b.seed = 3;
  return make_block_graph(b).graph;
}

}  // namespace

TEST_CASE("config validation") {
  TrainConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.dim = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.structure_prob = 1.5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.lr0 = -1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.threads = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("training data tables") {
  const auto g = small_graph();
  const auto data = build_training_data(g, small_config());
  CHECK(data.has_structure());
  CHECK(data.has_attributes());
  CHECK(data.structure_pairs.size() == data.counts.entries().size());
  CHECK(data.attribute_pairs.size() == data.attr_pairs.size());
  CHECK(data.node_negatives.size() == g.node_count());
  CHECK(data.attr_negatives.size() == g.attr_count());
  for (const auto& [i, j] : data.attr_pairs) CHECK(g.attr_value(i, j).value_or(0.0) > 0.0);
}

TEST_CASE("deterministic mode is reproducible") {
  const auto g = small_graph();
  const auto a = train(g, small_config());
  const auto b = train(g, small_config());
  CHECK(a.model == b.model);
  auto c = small_config();
  c.seed = 6;
  CHECK_FALSE(train(g, c).model == a.model);
}

TEST_CASE("coin flip splits iterations by structure_prob") {
  const auto g = small_graph();
  auto c = small_config();
  c.max_iters = 1'000'000;
  c.dim = 2;
  const auto r = train(g, c);
  CHECK(r.stats.structure_steps + r.stats.attribute_steps == c.max_iters);
  const double frac = static_cast<double>(r.stats.structure_steps) / static_cast<double>(c.max_iters);
  CHECK(std::abs(frac - 0.5) < 0.002);
  CHECK(r.model.all_finite());
}

TEST_CASE("structure-only graph runs every step on structure") {
  auto g = parse_edges("a b\nb c\nc d\nd a\n");
  auto c = small_config();
  c.max_iters = 5'000;
  const auto r = train(g, c);
  CHECK(r.stats.attribute_steps == 0);
  CHECK(r.stats.structure_steps == c.max_iters);
  CHECK(r.model.all_finite());
}

TEST_CASE("attribute-only graph runs every step on attributes") {
  auto g = parse_edges("a\nb\nc\n");
  g = parse_attrs(g, "a x 1\nb y 1\nc x 2\n");
  auto c = small_config();
  c.max_iters = 2'000;
  const auto r = train(g, c);
  CHECK(r.stats.structure_steps == 0);
  CHECK(r.stats.attribute_steps == c.max_iters);
}

TEST_CASE("no pairs at all is an error") {
  auto g = parse_edges("a\nb\n");
  CHECK_THROWS_AS(build_training_data(g, small_config()), Error);
}

TEST_CASE("observer sees the start, every period and the end") {
  const auto g = small_graph();
  auto c = small_config();
  c.max_iters = 10'500;
  std::vector<std::uint64_t> seen;
  TrainObserver obs{5'000, [&](std::uint64_t it, const EmbeddingModel& m) {
                      seen.push_back(it);
                      CHECK(m.all_finite());
                    }};
  train(g, c, &obs);
  CHECK(seen == std::vector<std::uint64_t>{0, 5'000, 10'000, 10'500});
}

TEST_CASE("parallel training stays finite") {
  const auto g = small_graph();
  auto c = small_config();
  c.threads = 2;
  c.max_iters = 50'000;
  const auto r = train(g, c);
  CHECK(r.model.all_finite());
  CHECK(r.stats.structure_steps + r.stats.attribute_steps == c.max_iters);
}
