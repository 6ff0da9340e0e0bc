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

#include "inembed/synthetic.hpp"

#include <string>

#include "inembed/rng.hpp"

namespace inembed {

LabeledGraph make_block_graph(const BlockGraphConfig& config) {
  const std::size_t n = config.blocks * config.nodes_per_block;
  const std::size_t attrs = config.blocks * config.attrs_per_block;
  auto block_of = [&](std::size_t i) { return i / config.nodes_per_block; };

  GraphBuilder builder;
  LabeledGraph out;
  for (std::size_t i = 0; i < n; ++i) builder.add_node("n" + std::to_string(i));
  for (std::size_t a = 0; a < attrs; ++a) builder.add_attr("a" + std::to_string(a));
  for (std::size_t b = 0; b < config.blocks; ++b) out.labels.classes.intern("b" + std::to_string(b));

  Rng edge_rng(derive_seed(config.seed, "sbm-edges"));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = block_of(u) == block_of(v) ? config.p_intra : config.p_inter;
      if (edge_rng.uniform() < p) builder.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }

  Rng attr_rng(derive_seed(config.seed, "sbm-attrs"));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < attrs; ++a) {
      bool bit = a / config.attrs_per_block == block_of(i);
      if (attr_rng.uniform() < config.flip_noise) bit = !bit;
      if (bit) builder.set_attr(static_cast<NodeId>(i), static_cast<AttrId>(a), 1.0);
    }
  }

  out.graph = builder.build();
  out.labels.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels.labels[i] = static_cast<LabelId>(block_of(i));
  return out;
}

}  // namespace inembed
