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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ordeval/dataset.hpp"
#include "ordeval/matching.hpp"
#include "ordeval/types.hpp"

namespace ordeval {

/// (predicted, true) class pair of one matched detection.
struct ClassPair {
  DamageState predicted;
  DamageState truth;

  bool operator==(const ClassPair&) const = default;
};

/// Dereference a match result into the class pairs the ordinal metrics
/// consume, in match order.
std::vector<ClassPair> matched_class_pairs(const Dataset& dataset,
                                           const PredictionSet& preds,
                                           const MatchResult& match);

/// Mean absolute ordinal error over matched pairs. Requires at least one
/// pair; zero matches leave the metric undefined, never zero.
double maoe(std::span<const ClassPair> pairs);

/// Fraction of matched pairs whose predicted class is within k ordinal
/// levels of the truth. k = 0 is exact accuracy; k = 4 saturates at 1.
double ordinal_top_k(std::span<const ClassPair> pairs, int k);

struct OrdinalScores {
  std::optional<double> maoe;
  std::array<std::optional<double>, kNumClasses> top_k;  // index = k
  std::size_t matched_count = 0;
  double match_rate = 0.0;  // matched / total ground-truth instances
};

OrdinalScores compute_ordinal_scores(const Dataset& dataset,
                                     const PredictionSet& preds,
                                     const MatchResult& match);

using ConfusionCounts = Eigen::Matrix<std::int64_t, kNumClasses, kNumClasses>;
using ConfusionRates = Eigen::Matrix<double, kNumClasses, kNumClasses>;

/// Row = true class, column = predicted class. Rows of `row_normalized`
/// sum to 1; rows with zero count stay all-zero and are flagged through
/// `row_defined`.
struct OrdinalConfusionMatrix {
  ConfusionCounts counts = ConfusionCounts::Zero();
  ConfusionRates row_normalized = ConfusionRates::Zero();
  std::array<bool, kNumClasses> row_defined{};
};

OrdinalConfusionMatrix confusion(std::span<const ClassPair> pairs);

/// Counts matrix as CSV with DS0..DS4 row and column labels.
std::string confusion_csv(const OrdinalConfusionMatrix& matrix);

}  // namespace ordeval
