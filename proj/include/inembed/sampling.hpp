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
#include <span>
#include <vector>

#include "inembed/rng.hpp"

namespace inembed {

// Walker/Vose alias table: O(n) build, O(1) draws.
class AliasTable {
 public:
  AliasTable() = default;
  // Throws ValidationError when weights are empty, all zero, negative or
  // non-finite.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }
  double weight_total() const { return weight_total_; }
  std::span<const double> prob() const { return prob_; }
  std::span<const std::uint32_t> alias() const { return alias_; }

  // One uniform slot pick and one Bernoulli trial.
  std::uint32_t draw(Rng& rng) const {
    const auto slot = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[slot] ? slot : alias_[slot];
  }

  // Exact sampling probability of every item, read off the table:
  // (prob[k] + sum over slots s aliasing to k of (1 - prob[s])) / n.
  std::vector<double> induced_probabilities() const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
  double weight_total_ = 0.0;
};

// Alias table over candidate ids weighted by mass^power, with draws that
// reject one excluded id.
class NegativeSampler {
 public:
  static constexpr double kDefaultPower = 0.75;
  static constexpr int kMaxRetries = 1000;

  NegativeSampler() = default;
  explicit NegativeSampler(std::span<const double> mass, double power = kDefaultPower);

  std::size_t size() const { return table_.size(); }
  std::size_t positive_count() const { return positive_count_; }
  const AliasTable& table() const { return table_; }

  // Fills `out` with draws that differ from `exclude`. Duplicates allowed.
  // Rejected draws are retried; after kMaxRetries rejections in a row the
  // draw falls back to an O(n) scan of the distribution with `exclude`
  // removed. Throws when no candidate other than `exclude` carries mass.
  void draw(std::uint32_t exclude, std::span<std::uint32_t> out, Rng& rng) const;
  std::vector<std::uint32_t> draw(std::uint32_t exclude, std::size_t k, Rng& rng) const;

 private:
  std::uint32_t draw_excluding_scan(std::uint32_t exclude, Rng& rng) const;

  AliasTable table_;
  std::vector<double> weights_;
  std::vector<bool> positive_;
  std::size_t positive_count_ = 0;
};

}  // namespace inembed
