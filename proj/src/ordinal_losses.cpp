// Copyright (c) 2026 The ordeval Authors. All Rights Reserved.
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

#include "ordeval/ordinal_losses.hpp"

#include <cmath>
#include <stdexcept>

namespace ordeval {

namespace {

// log(1 + e^x) without overflow.
double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid_scalar(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void require_finite(const ClassVector& z, const char* who) {
  if (!z.allFinite())
    throw std::invalid_argument(std::string(who) + ": logits must be finite");
}

void require_targets_in_unit(const ClassVector& targets, const char* who) {
  if (!targets.allFinite() || (targets < 0.0).any() || (targets > 1.0).any())
    throw std::invalid_argument(std::string(who) +
                                ": targets must be in [0, 1]");
}

}  // namespace

ClassVector sigmoid(const ClassVector& z) {
  return z.unaryExpr([](double x) { return sigmoid_scalar(x); });
}

ClassVector softmax(const ClassVector& z) {
  const ClassVector shifted = z - z.maxCoeff();
  const ClassVector e = shifted.exp();
  return e / e.sum();
}

LossOutput bce_soft(const ClassVector& z, const ClassVector& targets) {
  require_finite(z, "bce_soft");
  require_targets_in_unit(targets, "bce_soft");
  LossOutput out;
  // -y log s(z) = y softplus(-z); -(1-y) log(1 - s(z)) = (1-y) softplus(z)
  for (int k = 0; k < kNumClasses; ++k)
    out.value += targets[k] * softplus(-z[k]) +
                 (1.0 - targets[k]) * softplus(z[k]);
  out.gradient = sigmoid(z) - targets;
  return out;
}

LossOutput bce_soft(const ClassVector& z, const SoftTargetDistribution& targets) {
  return bce_soft(z, targets.targets);
}

LossOutput focal_soft(const ClassVector& z, const ClassVector& targets,
                      double gamma) {
  require_finite(z, "focal_soft");
  if (!targets.allFinite() || (targets < 0.0).any())
    throw std::invalid_argument("focal_soft: targets must be >= 0");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("focal_soft: gamma must be >= 0");

  const ClassVector shifted = z - z.maxCoeff();
  const ClassVector log_p = shifted - std::log(shifted.exp().sum());
  const ClassVector p = log_p.exp();

  LossOutput out;
  ClassVector chain = ClassVector::Zero();  // targets_k * d loss_k / d p_k * p_k
  for (int k = 0; k < kNumClasses; ++k) {
    const double q = 1.0 - p[k];
    out.value += targets[k] * std::pow(q, gamma) * (-log_p[k]);
    double dloss_dp;
    if (gamma == 0.0) {
      dloss_dp = -1.0 / p[k];
    } else {
      // d/dp [-(1-p)^g log p] = g (1-p)^(g-1) log p - (1-p)^g / p;
      // the first term tends to 0 as p -> 1 for g > 0.
      const double decay = q > 0.0 ? gamma * std::pow(q, gamma - 1.0) * log_p[k] : 0.0;
      dloss_dp = decay - std::pow(q, gamma) / p[k];
    }
    chain[k] = targets[k] * dloss_dp * p[k];
  }
  out.gradient = chain - p * chain.sum();
  return out;
}

LossOutput focal_soft(const ClassVector& z, const SoftTargetDistribution& targets,
                      double gamma) {
  return focal_soft(z, targets.targets, gamma);
}

double expected_class(const ClassVector& z) {
  require_finite(z, "expected_class");
  const ClassVector p = softmax(z);
  const ClassVector k = ClassVector::LinSpaced(kNumClasses, 0.0,
                                               static_cast<double>(kNumClasses - 1));
  return (k * p).sum();
}

double ordinal_penalty_factor(double lambda, double expected_class_index,
                              DamageState true_class) {
  if (!(lambda >= 0.0))
    throw std::invalid_argument("ordinal_penalty_factor: lambda must be >= 0");
  return 1.0 + lambda * std::abs(expected_class_index -
                                 static_cast<double>(true_class.index()));
}

LossOutput penalized_loss(const ClassVector& z, const ClassVector& targets,
                          DamageState true_class, const LossConfig& config,
                          BaseLoss base) {
  if (!(config.lambda >= 0.0))
    throw std::invalid_argument("penalized_loss: lambda must be >= 0");

  const LossOutput base_out = base == BaseLoss::kBce
                                  ? bce_soft(z, targets)
                                  : focal_soft(z, targets, config.gamma);

  const ClassVector p = softmax(z);
  const ClassVector k = ClassVector::LinSpaced(kNumClasses, 0.0,
                                               static_cast<double>(kNumClasses - 1));
  const double c_hat = (k * p).sum();
  const double delta = c_hat - static_cast<double>(true_class.index());
  const double factor = 1.0 + config.lambda * std::abs(delta);

  LossOutput out;
  out.value = factor * base_out.value;
  out.expected_class = c_hat;
  out.gradient = factor * base_out.gradient;
  if (!config.penalty_detached && config.lambda > 0.0 && delta != 0.0) {
    // d c_hat / d z_j = p_j (j - c_hat), through the softmax; the |.|
    // subgradient at delta = 0 is taken as 0.
    const double sign = delta > 0.0 ? 1.0 : -1.0;
    const ClassVector dchat = p * (k - c_hat);
    out.gradient += (config.lambda * sign * base_out.value) * dchat;
  }
  return out;
}

LossOutput penalized_loss(const ClassVector& z,
                          const SoftTargetDistribution& targets,
                          const LossConfig& config, BaseLoss base) {
  return penalized_loss(z, targets.targets, targets.true_class, config, base);
}

}  // namespace ordeval
