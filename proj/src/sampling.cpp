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

#include "inembed/sampling.hpp"

#include <cmath>

#include "inembed/error.hpp"

namespace inembed {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw ValidationError("alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("alias weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("alias weights are all zero");
  weight_total_ = total;

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    scaled[k] = weights[k] * static_cast<double>(n) / total;
  }
  // Zero-weight items go on top of the small list so they are paired first
  // and never end up among the numerically-one leftovers.
  for (std::uint32_t k = 0; k < n; ++k) {
    if (scaled[k] >= 1.0) large.push_back(k);
    else if (weights[k] > 0.0) small.push_back(k);
  }
  for (std::uint32_t k = 0; k < n; ++k) {
    if (weights[k] == 0.0) small.push_back(k);
  }

  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t l : large) {
    prob_[l] = 1.0;
    alias_[l] = l;
  }
  for (std::uint32_t s : small) {
    // Only round-off leaves positive-weight items here.
    prob_[s] = weights[s] > 0.0 ? 1.0 : 0.0;
    alias_[s] = s;
  }
}

std::vector<double> AliasTable::induced_probabilities() const {
  const std::size_t n = prob_.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    p[s] += prob_[s];
    if (alias_[s] != s) p[alias_[s]] += 1.0 - prob_[s];
  }
  for (double& v : p) v /= static_cast<double>(n);
  return p;
}

NegativeSampler::NegativeSampler(std::span<const double> mass, double power) {
  std::vector<double> weights(mass.size());
  positive_.assign(mass.size(), false);
  for (std::size_t k = 0; k < mass.size(); ++k) {
    if (!(mass[k] >= 0.0)) throw ValidationError("negative sampling mass must be >= 0");
    weights[k] = mass[k] > 0.0 ? std::pow(mass[k], power) : 0.0;
    if (weights[k] > 0.0) {
      positive_[k] = true;
      ++positive_count_;
    }
  }
  table_ = AliasTable(weights);
  weights_ = std::move(weights);
}

std::uint32_t NegativeSampler::draw_excluding_scan(std::uint32_t exclude, Rng& rng) const {
  double total = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (k != exclude) total += weights_[k];
  }
  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::uint32_t last = 0;
  for (std::uint32_t k = 0; k < weights_.size(); ++k) {
    if (k == exclude || weights_[k] == 0.0) continue;
    acc += weights_[k];
    last = k;
    if (target < acc) return k;
  }
  return last;
}

void NegativeSampler::draw(std::uint32_t exclude, std::span<std::uint32_t> out, Rng& rng) const {
  const bool exclude_live = exclude < positive_.size() && positive_[exclude];
  if (positive_count_ < 2 && (exclude_live || positive_count_ == 0)) {
    throw ValidationError("negative sampling needs a candidate other than the excluded item");
  }
  for (auto& slot : out) {
    int retries = 0;
    std::uint32_t pick = table_.draw(rng);
    while (pick == exclude) {
      if (++retries >= kMaxRetries) {
        pick = draw_excluding_scan(exclude, rng);
        break;
      }
      pick = table_.draw(rng);
    }
    slot = pick;
  }
}

std::vector<std::uint32_t> NegativeSampler::draw(std::uint32_t exclude, std::size_t k, Rng& rng) const {
  std::vector<std::uint32_t> out(k);
  draw(exclude, out, rng);
  return out;
}

}  // namespace inembed
