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

#include "ordeval/detection_metrics.hpp"

#include <algorithm>
#include <cstddef>

#include "ordeval/matching.hpp"

namespace ordeval {

namespace {

constexpr int kRecallSamples = 101;

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

struct ScoredFlag {
  double confidence;
  bool is_tp;
};

// Confidence-descending TP/FP flags; stable sort keeps input order on ties.
std::vector<ScoredFlag> scored_flags(std::span<const Detection> dets,
                                     const MatchResult& match) {
  std::vector<char> matched(dets.size(), 0);
  for (const MatchedPair& pair : match.matched)
    matched[pair.detection_index] = 1;
  std::vector<ScoredFlag> flags;
  flags.reserve(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i)
    flags.push_back({dets[i].confidence, matched[i] != 0});
  std::stable_sort(flags.begin(), flags.end(),
                   [](const ScoredFlag& a, const ScoredFlag& b) {
                     return a.confidence > b.confidence;
                   });
  return flags;
}

}  // namespace

PrecisionRecallCurve pr_curve(DamageState cls, const Dataset& dataset,
                              const PredictionSet& preds,
                              double iou_threshold) {
  std::vector<GroundTruthInstance> gts;
  for (const GroundTruthInstance& gt : dataset.ground_truth)
    if (gt.true_class == cls) gts.push_back(gt);
  std::vector<Detection> dets;
  for (const Detection& det : preds.detections)
    if (det.predicted_class == cls) dets.push_back(det);

  MatchOptions opts;
  opts.iou_threshold = iou_threshold;
  opts.threads = 1;
  const MatchResult match = match_greedy(gts, dets, opts);

  PrecisionRecallCurve curve;
  curve.num_ground_truth = gts.size();
  std::size_t tp = 0;
  std::size_t count = 0;
  for (const ScoredFlag& flag : scored_flags(dets, match)) {
    ++count;
    if (flag.is_tp) ++tp;
    curve.points.push_back(
        {flag.confidence, static_cast<double>(tp) / static_cast<double>(count),
         gts.empty() ? 0.0
                     : static_cast<double>(tp) / static_cast<double>(gts.size())});
  }
  return curve;
}

double interpolated_ap(const PrecisionRecallCurve& curve) {
  const std::size_t n = curve.points.size();
  // Right-to-left precision envelope: envelope[i] = max precision among
  // points with index >= i. Recall is non-decreasing along the curve, so
  // the points with recall >= r form a suffix.
  std::vector<double> envelope(n);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running = std::max(running, curve.points[i].precision);
    envelope[i] = running;
  }
  double total = 0.0;
  std::size_t j = 0;
  for (int i = 0; i < kRecallSamples; ++i) {
    const double r = static_cast<double>(i) / 100.0;
    while (j < n && curve.points[j].recall < r) ++j;
    if (j < n) total += envelope[j];
  }
  return total / kRecallSamples;
}

std::optional<double> average_precision(DamageState cls, const Dataset& dataset,
                                        const PredictionSet& preds,
                                        double iou_threshold) {
  const PrecisionRecallCurve curve = pr_curve(cls, dataset, preds, iou_threshold);
  if (curve.num_ground_truth == 0) return std::nullopt;
  return interpolated_ap(curve);
}

DetectionScores map_at_50(const Dataset& dataset, const PredictionSet& preds,
                          const DetectionScoreOptions& opts) {
  if (dataset.ground_truth.empty()) throw EmptyGroundTruthError();

  DetectionScores scores;
  double ap_sum = 0.0;
  int populated = 0;
  for (int k = 0; k < kNumClasses; ++k) {
    scores.per_class_ap[static_cast<std::size_t>(k)] = average_precision(
        DamageState(k), dataset, preds, opts.iou_threshold);
    if (scores.per_class_ap[static_cast<std::size_t>(k)]) {
      ap_sum += *scores.per_class_ap[static_cast<std::size_t>(k)];
      ++populated;
    }
  }
  scores.map50 = populated > 0 ? ap_sum / populated : 0.0;

  MatchOptions match_opts;
  match_opts.iou_threshold = opts.iou_threshold;
  match_opts.class_aware = true;
  match_opts.threads = opts.threads;
  const MatchResult match = match_greedy(dataset, preds, match_opts);
  const std::vector<ScoredFlag> flags =
      scored_flags(preds.detections, match);
  const double total_gt = static_cast<double>(dataset.ground_truth.size());

  // Sweep confidence thresholds; a threshold admits every detection with
  // confidence >= t, so candidate cut points sit at distinct confidences.
  std::size_t tp = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].is_tp) ++tp;
    if (i + 1 < flags.size() &&
        flags[i + 1].confidence == flags[i].confidence)
      continue;
    const double precision =
        static_cast<double>(tp) / static_cast<double>(i + 1);
    const double recall = static_cast<double>(tp) / total_gt;
    const double f1 = f1_score(precision, recall);
    if (!scores.f1_threshold || f1 > scores.f1) {
      scores.precision = precision;
      scores.recall = recall;
      scores.f1 = f1;
      scores.f1_threshold = flags[i].confidence;
    }
  }

  if (opts.fixed_f1_threshold) {
    const double t = *opts.fixed_f1_threshold;
    std::size_t tp_t = 0;
    std::size_t admitted = 0;
    for (const ScoredFlag& flag : flags) {
      if (flag.confidence < t) break;
      ++admitted;
      if (flag.is_tp) ++tp_t;
    }
    FixedThresholdScores fixed;
    fixed.threshold = t;
    fixed.precision = admitted > 0 ? static_cast<double>(tp_t) /
                                         static_cast<double>(admitted)
                                   : 0.0;
    fixed.recall = static_cast<double>(tp_t) / total_gt;
    fixed.f1 = f1_score(fixed.precision, fixed.recall);
    scores.fixed = fixed;
  }

  return scores;
}

}  // namespace ordeval
