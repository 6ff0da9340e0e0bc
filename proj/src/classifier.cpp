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

#include <Eigen/Dense>
#include <cmath>

#include "inembed/error.hpp"
#include "inembed/eval.hpp"
#include "inembed/model.hpp"

namespace inembed {

namespace {

// Mean log-loss plus (l2 / 2) |w|^2 over standardized rows; bias unpenalized.
double penalized_loss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& theta,
                      double l2) {
  const Eigen::Index d = x.cols() - 1;
  const Eigen::VectorXd margin = x * theta;
  double loss = 0.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    // -[y log s(m) + (1 - y) log s(-m)]
    loss -= y[r] > 0.5 ? log_sigmoid(margin[r]) : log_sigmoid(-margin[r]);
  }
  loss /= static_cast<double>(x.rows());
  return loss + 0.5 * l2 * theta.head(d).squaredNorm();
}

}  // namespace

LinkClassifier LinkClassifier::fit(std::span<const std::vector<double>> features,
                                   const std::vector<bool>& labels, const ClassifierConfig& config) {
  if (features.empty() || features.size() != labels.size()) {
    throw ValidationError("classifier needs a nonempty training set with one label per row");
  }
  const std::size_t n = features.size();
  const std::size_t d = features[0].size();
  for (const auto& row : features) {
    if (row.size() != d) throw ValidationError("classifier rows differ in dimension");
  }

  LinkClassifier clf;
  clf.mean_.assign(d, 0.0);
  clf.scale_.assign(d, 1.0);
  for (const auto& row : features) {
    for (std::size_t k = 0; k < d; ++k) clf.mean_[k] += row[k];
  }
  for (double& m : clf.mean_) m /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (const auto& row : features) {
    for (std::size_t k = 0; k < d; ++k) var[k] += (row[k] - clf.mean_[k]) * (row[k] - clf.mean_[k]);
  }
  bool any_varying = false;
  for (std::size_t k = 0; k < d; ++k) {
    const double sd = std::sqrt(var[k] / static_cast<double>(n));
    if (sd > 1e-12) {
      clf.scale_[k] = sd;
      any_varying = true;
    }
  }
  if (!any_varying) warn("link classifier: all training features are identical");

  // Design matrix with a trailing bias column.
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d + 1));
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = (features[r][k] - clf.mean_[k]) / clf.scale_[k];
    }
    x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d)) = 1.0;
    y[static_cast<Eigen::Index>(r)] = labels[r] ? 1.0 : 0.0;
  }

  const auto dim = static_cast<Eigen::Index>(d + 1);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd reg = Eigen::VectorXd::Constant(dim, config.l2);
  reg[dim - 1] = 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  double loss = penalized_loss(x, y, theta, config.l2);

  std::size_t iter = 0;
  for (; iter < config.max_iters; ++iter) {
    const Eigen::VectorXd margin = x * theta;
    Eigen::VectorXd p(margin.size());
    Eigen::VectorXd w(margin.size());
    for (Eigen::Index r = 0; r < margin.size(); ++r) {
      p[r] = sigmoid(margin[r]);
      w[r] = p[r] * (1.0 - p[r]);
    }
    const Eigen::VectorXd grad = inv_n * (x.transpose() * (p - y)) + reg.cwiseProduct(theta);
    if (grad.lpNorm<Eigen::Infinity>() < config.tolerance) break;

    Eigen::MatrixXd hess = inv_n * (x.transpose() * w.asDiagonal() * x);
    hess.diagonal() += reg;
    hess.diagonal().array() += 1e-12;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);

    // Backtracking keeps the separable case from overshooting.
    double t = 1.0;
    Eigen::VectorXd next = theta - step;
    double next_loss = penalized_loss(x, y, next, config.l2);
    while (next_loss > loss - 1e-4 * t * grad.dot(step) && t > 1e-10) {
      t *= 0.5;
      next = theta - t * step;
      next_loss = penalized_loss(x, y, next, config.l2);
    }
    if (!(next_loss <= loss)) break;
    theta = next;
    const double change = loss - next_loss;
    loss = next_loss;
    if (change < 1e-15) {
      ++iter;
      break;
    }
  }
  clf.iterations_ = iter;
  clf.weights_.assign(theta.data(), theta.data() + d);
  clf.bias_ = theta[dim - 1];
  return clf;
}

double LinkClassifier::decision(std::span<const double> features) const {
  if (features.size() != weights_.size()) throw ValidationError("feature dimension mismatch");
  double m = bias_;
  for (std::size_t k = 0; k < weights_.size(); ++k) m += weights_[k] * (features[k] - mean_[k]) / scale_[k];
  return m;
}

std::vector<double> LinkClassifier::raw_weights() const {
  std::vector<double> out(weights_.size());
  for (std::size_t k = 0; k < weights_.size(); ++k) out[k] = weights_[k] / scale_[k];
  return out;
}

double LinkClassifier::raw_bias() const {
  double b = bias_;
  for (std::size_t k = 0; k < weights_.size(); ++k) b -= weights_[k] * mean_[k] / scale_[k];
  return b;
}

}  // namespace inembed
