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
#include <span>

#include "ordeval/types.hpp"

namespace ordeval {

/// Exponents of the task-aligned score s = iou^beta * p^alpha.
struct AlignmentParams {
  double alpha = 1.0;  // classification exponent
  double beta = 6.0;   // localization exponent
};

/// Supervision strength for one positive sample: combines spatial overlap
/// with the confidence assigned to the true class. Both inputs in [0, 1],
/// result in [0, 1].
double task_aligned_score(double iou_value, double p_true_class,
                          const AlignmentParams& params = {});

/// Width and truncation of the soft ordinal target distribution.
struct SoftTargetConfig {
  double psi = 0.5;                     // Gaussian width, > 0
  std::optional<int> k_neighbors = 1;   // truncation radius; nullopt = unbounded
};

/// The width sweep used for calibration studies: {0.1, 0.3, 0.5, 1.0, 2.0}.
std::span<const double> psi_sweep_grid();

/// Gaussian kernel about the true class: w_k = exp(-(k - c)^2 / (2 psi^2)).
/// w at the true class is exactly 1.
ClassVector gaussian_weights(DamageState true_class, double psi);

/// Soft ordinal targets for one sample. `targets` sums to `scale`; entries
/// farther than the truncation radius from the true class are exactly zero.
struct SoftTargetDistribution {
  ClassVector raw_weights;  // Gaussian weights before truncation
  ClassVector targets;
  DamageState true_class;
  double scale;
};

/// Builds the target distribution: Gaussian weights, zeroed outside the
/// K-neighborhood, normalized over the survivors, scaled by `scale`.
/// With k_neighbors = 0 this is exactly the scaled one-hot vector.
SoftTargetDistribution soft_targets(DamageState true_class, double scale,
                                    const SoftTargetConfig& config);

}  // namespace ordeval
