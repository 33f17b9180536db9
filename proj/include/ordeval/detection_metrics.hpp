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

#include <array>
#include <optional>
#include <vector>

#include "ordeval/dataset.hpp"
#include "ordeval/types.hpp"

namespace ordeval {

struct PrCurvePoint {
  double confidence;
  double precision;
  double recall;
};

/// One point per detection prefix, confidence descending; recall is
/// non-decreasing along the curve.
struct PrecisionRecallCurve {
  std::vector<PrCurvePoint> points;
  std::size_t num_ground_truth = 0;
};

/// Class-restricted PR curve at the given IoU threshold (class-aware
/// greedy matching of this class's detections against its ground truths).
PrecisionRecallCurve pr_curve(DamageState cls, const Dataset& dataset,
                              const PredictionSet& preds,
                              double iou_threshold);

/// 101-point interpolated AP (COCO convention): precision at recall r is
/// the maximum precision among points with recall >= r, sampled at
/// r in {0.00, 0.01, ..., 1.00} and averaged.
double interpolated_ap(const PrecisionRecallCurve& curve);

/// AP for one class; empty when the class has no ground-truth instances.
std::optional<double> average_precision(DamageState cls, const Dataset& dataset,
                                        const PredictionSet& preds,
                                        double iou_threshold);

struct FixedThresholdScores {
  double threshold;
  double precision;
  double recall;
  double f1;
};

struct DetectionScores {
  std::array<std::optional<double>, kNumClasses> per_class_ap;
  double map50 = 0.0;  // mean AP over classes with >= 1 ground truth
  // Micro-averaged best-F1 operating point (class-aware matching).
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> f1_threshold;
  // Secondary figure at a user-fixed confidence threshold.
  std::optional<FixedThresholdScores> fixed;
};

struct DetectionScoreOptions {
  double iou_threshold = 0.5;
  std::optional<double> fixed_f1_threshold;
  int threads = 0;
};

/// Per-class AP, their mean over populated classes, and the best-F1
/// operating point. Throws EmptyGroundTruthError when there is nothing
/// to evaluate.
DetectionScores map_at_50(const Dataset& dataset, const PredictionSet& preds,
                          const DetectionScoreOptions& opts = {});

}  // namespace ordeval
