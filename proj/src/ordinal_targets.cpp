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

#include "ordeval/ordinal_targets.hpp"

#include <cmath>
#include <stdexcept>

namespace ordeval {

double task_aligned_score(double iou_value, double p_true_class,
                          const AlignmentParams& params) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0))
    throw std::invalid_argument("task_aligned_score: alpha and beta must be > 0");
  if (!(iou_value >= 0.0 && iou_value <= 1.0))
    throw std::invalid_argument("task_aligned_score: iou must be in [0, 1]");
  if (!(p_true_class >= 0.0 && p_true_class <= 1.0))
    throw std::invalid_argument("task_aligned_score: p must be in [0, 1]");
  return std::pow(iou_value, params.beta) * std::pow(p_true_class, params.alpha);
}

std::span<const double> psi_sweep_grid() {
  static constexpr double grid[] = {0.1, 0.3, 0.5, 1.0, 2.0};
  return grid;
}

ClassVector gaussian_weights(DamageState true_class, double psi) {
  if (!(psi > 0.0))
    throw std::invalid_argument("gaussian_weights: psi must be > 0");
  const double c = static_cast<double>(true_class.index());
  const ClassVector k = ClassVector::LinSpaced(kNumClasses, 0.0,
                                               static_cast<double>(kNumClasses - 1));
  return (-(k - c).square() / (2.0 * psi * psi)).exp();
}

SoftTargetDistribution soft_targets(DamageState true_class, double scale,
                                    const SoftTargetConfig& config) {
  if (!(scale > 0.0 && scale <= 1.0))
    throw std::invalid_argument("soft_targets: scale must be in (0, 1]");
  if (config.k_neighbors && (*config.k_neighbors < 0 ||
                             *config.k_neighbors >= kNumClasses))
    throw std::invalid_argument("soft_targets: k_neighbors must be in [0, " +
                                std::to_string(kNumClasses - 1) +
                                "] or unbounded");

  SoftTargetDistribution dist{gaussian_weights(true_class, config.psi),
                              ClassVector::Zero(), true_class, scale};

  // Truncate before normalizing, so boundary classes renormalize over an
  // asymmetric support.
  ClassVector truncated = dist.raw_weights;
  if (config.k_neighbors) {
    for (int k = 0; k < kNumClasses; ++k) {
      if (std::abs(k - true_class.index()) > *config.k_neighbors)
        truncated[k] = 0.0;
    }
  }
  dist.targets = truncated * (scale / truncated.sum());
  return dist;
}

}  // namespace ordeval
