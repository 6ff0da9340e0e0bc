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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "inembed/model.hpp"
#include "oracles.hpp"

namespace inembed::oracle {

// Largest relative error between pair_gradients and central differences of
// ns_loss over every parameter the pair touches. Denominator max(1, |g|).
inline double max_gradient_error(EmbeddingModel& m, Objective which, NodeId i, std::uint32_t j,
                                 const std::vector<std::uint32_t>& negs, double h = 1e-4) {
  const auto g = pair_gradients(m, which, i, j, negs);
  double worst = 0.0;
  auto check = [&](std::span<double> params, std::span<const double> analytic) {
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double saved = params[k];
      params[k] = saved + h;
      const double up = ns_loss(m, which, i, j, negs);
      params[k] = saved - h;
      const double down = ns_loss(m, which, i, j, negs);
      params[k] = saved;
      const double fd = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(fd - analytic[k]) / std::max(1.0, std::abs(analytic[k])));
    }
  };
  check(m.input(i), g.input);
  for (const auto& [col, grad] : g.outputs) check(m.output(which, col), grad);
  return worst;
}

}  // namespace inembed::oracle
