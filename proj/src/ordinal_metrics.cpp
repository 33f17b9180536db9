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

#include "ordeval/ordinal_metrics.hpp"

#include <sstream>
#include <stdexcept>

namespace ordeval {

std::vector<ClassPair> matched_class_pairs(const Dataset& dataset,
                                           const PredictionSet& preds,
                                           const MatchResult& match) {
  std::vector<ClassPair> pairs;
  pairs.reserve(match.matched.size());
  for (const MatchedPair& pair : match.matched) {
    pairs.push_back(
        {preds.detections[pair.detection_index].predicted_class,
         dataset.ground_truth[pair.gt_index].true_class});
  }
  return pairs;
}

double maoe(std::span<const ClassPair> pairs) {
  if (pairs.empty())
    throw std::invalid_argument("maoe: undefined over zero matched pairs");
  std::int64_t total = 0;
  for (const ClassPair& pair : pairs)
    total += ordinal_distance(pair.predicted, pair.truth);
  return static_cast<double>(total) / static_cast<double>(pairs.size());
}

double ordinal_top_k(std::span<const ClassPair> pairs, int k) {
  if (pairs.empty())
    throw std::invalid_argument("ordinal_top_k: undefined over zero matched pairs");
  if (k < 0) throw std::invalid_argument("ordinal_top_k: k must be >= 0");
  std::size_t within = 0;
  for (const ClassPair& pair : pairs)
    if (ordinal_distance(pair.predicted, pair.truth) <= k) ++within;
  return static_cast<double>(within) / static_cast<double>(pairs.size());
}

OrdinalScores compute_ordinal_scores(const Dataset& dataset,
                                     const PredictionSet& preds,
                                     const MatchResult& match) {
  const std::vector<ClassPair> pairs =
      matched_class_pairs(dataset, preds, match);
  OrdinalScores scores;
  scores.matched_count = pairs.size();
  scores.match_rate =
      dataset.ground_truth.empty()
          ? 0.0
          : static_cast<double>(pairs.size()) /
                static_cast<double>(dataset.ground_truth.size());
  if (!pairs.empty()) {
    scores.maoe = maoe(pairs);
    for (int k = 0; k < kNumClasses; ++k)
      scores.top_k[static_cast<std::size_t>(k)] = ordinal_top_k(pairs, k);
  }
  return scores;
}

OrdinalConfusionMatrix confusion(std::span<const ClassPair> pairs) {
  OrdinalConfusionMatrix matrix;
  for (const ClassPair& pair : pairs)
    ++matrix.counts(pair.truth.index(), pair.predicted.index());
  for (int row = 0; row < kNumClasses; ++row) {
    const std::int64_t row_sum = matrix.counts.row(row).sum();
    matrix.row_defined[static_cast<std::size_t>(row)] = row_sum > 0;
    if (row_sum > 0) {
      matrix.row_normalized.row(row) =
          matrix.counts.row(row).cast<double>() / static_cast<double>(row_sum);
    }
  }
  return matrix;
}

std::string confusion_csv(const OrdinalConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "true\\pred";
  for (int k = 0; k < kNumClasses; ++k) out << ",DS" << k;
  out << "\n";
  for (int row = 0; row < kNumClasses; ++row) {
    out << "DS" << row;
    for (int col = 0; col < kNumClasses; ++col)
      out << "," << matrix.counts(row, col);
    out << "\n";
  }
  return out.str();
}

}  // namespace ordeval
