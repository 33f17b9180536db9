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

#pragma once

#include <optional>

#include "ordeval/ordinal_targets.hpp"
#include "ordeval/types.hpp"

namespace ordeval {

enum class BaseLoss { kBce, kFocal };

struct LossConfig {
  double gamma = 1.5;   // focal focusing parameter, >= 0
  double lambda = 0.0;  // ordinal-distance penalty strength, >= 0
  // Treat the penalty factor as a constant of the current evaluation
  // instead of differentiating through the expected class index.
  bool penalty_detached = false;
};

struct LossOutput {
  double value = 0.0;
  ClassVector gradient = ClassVector::Zero();  // d value / d logits
  std::optional<double> expected_class;        // set by penalized_loss
};

/// Elementwise stable sigmoid.
ClassVector sigmoid(const ClassVector& z);

/// Max-subtracted stable softmax.
ClassVector softmax(const ClassVector& z);

/// Per-class binary cross-entropy with logits against soft targets,
/// summed over classes. Gradient is sigmoid(z) - targets.
LossOutput bce_soft(const ClassVector& z, const ClassVector& targets);
LossOutput bce_soft(const ClassVector& z, const SoftTargetDistribution& targets);

/// Softmax focal loss against soft targets:
/// -sum_k targets_k * (1 - p_k)^gamma * log p_k.
LossOutput focal_soft(const ClassVector& z, const ClassVector& targets,
                      double gamma);
LossOutput focal_soft(const ClassVector& z, const SoftTargetDistribution& targets,
                      double gamma);

/// Expected class index under softmax probabilities: sum_k k * p_k, in [0, 4].
double expected_class(const ClassVector& z);

/// 1 + lambda * |expected - true|; exactly 1 when lambda = 0.
double ordinal_penalty_factor(double lambda, double expected_class_index,
                              DamageState true_class);

/// Base loss scaled by the ordinal-distance penalty factor. The gradient
/// follows the full product rule through the softmax path of the expected
/// class unless `config.penalty_detached` is set; the |.| subgradient at
/// zero distance is 0.
LossOutput penalized_loss(const ClassVector& z, const ClassVector& targets,
                          DamageState true_class, const LossConfig& config,
                          BaseLoss base);
LossOutput penalized_loss(const ClassVector& z,
                          const SoftTargetDistribution& targets,
                          const LossConfig& config, BaseLoss base);

}  // namespace ordeval
