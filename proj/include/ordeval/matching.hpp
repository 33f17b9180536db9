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

#include <cstddef>
#include <span>
#include <vector>

#include "ordeval/dataset.hpp"
#include "ordeval/types.hpp"

namespace ordeval {

struct MatchedPair {
  std::size_t detection_index;
  std::size_t gt_index;
  double iou;

  bool operator==(const MatchedPair&) const = default;
};

/// Partition of detections and ground truths produced by greedy matching.
/// Every detection index appears in exactly one of matched /
/// unmatched_detections, every ground-truth index in exactly one of
/// matched / unmatched_ground_truth.
struct MatchResult {
  std::vector<MatchedPair> matched;  // images ascending, confidence descending
  std::vector<std::size_t> unmatched_detections;    // ascending index
  std::vector<std::size_t> unmatched_ground_truth;  // ascending index

  bool operator==(const MatchResult&) const = default;
};

struct MatchOptions {
  double iou_threshold = 0.5;  // in (0, 1]
  // When set, a detection may only match ground truths of its predicted
  // class (the per-class AP protocol). Unset, matches survive class
  // disagreement, which is what the ordinal metrics need.
  bool class_aware = false;
  int threads = 0;  // 0 = hardware concurrency; output is thread-invariant
};

/// Greedy confidence-ordered matching (COCO evaluator behavior), per image.
/// Detections are visited in confidence-descending order (ties keep input
/// order); each one takes the unmatched eligible ground truth of highest
/// IoU >= threshold, ties broken toward the lowest instance_id.
MatchResult match_greedy(const Dataset& dataset, const PredictionSet& preds,
                         const MatchOptions& opts = {});

/// Same protocol over raw instance lists; indices refer to these spans.
MatchResult match_greedy(std::span<const GroundTruthInstance> gts,
                         std::span<const Detection> dets,
                         const MatchOptions& opts = {});

}  // namespace ordeval
