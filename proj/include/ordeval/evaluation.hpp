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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ordeval/dataset.hpp"
#include "ordeval/detection_metrics.hpp"
#include "ordeval/ordinal_metrics.hpp"
#include "ordeval/types.hpp"

namespace ordeval {

inline constexpr int kReportSchemaVersion = 1;

const char* tool_version();

struct EvaluateOptions {
  double iou_threshold = 0.5;
  // Matching mode for the ordinal metrics; AP always matches class-aware.
  bool ordinal_class_aware = false;
  std::optional<double> fixed_f1_threshold;
  int threads = 0;  // 0 = all cores; never changes the report bytes
};

struct ProvenanceInfo {
  std::string ground_truth_digest;
  std::string predictions_digest;
};

struct DatasetSummary {
  std::size_t num_images = 0;
  std::size_t num_instances = 0;
  std::array<std::int64_t, kNumClasses> per_class_instances{};
};

struct EvaluationReport {
  DetectionScores detection;
  OrdinalScores ordinal;
  OrdinalConfusionMatrix confusion;
  EvaluateOptions config;
  ProvenanceInfo provenance;
  DatasetSummary dataset;
  std::size_t num_detections = 0;
};

DatasetSummary summarize(const Dataset& dataset);

/// Full evaluation: class-aware matching feeds AP and F1, the configured
/// ordinal matching feeds MAOE / Top-k / confusion. Throws
/// EmptyGroundTruthError when the dataset has no instances.
EvaluationReport evaluate(const Dataset& dataset, const PredictionSet& preds,
                          const EvaluateOptions& opts = {},
                          const ProvenanceInfo& provenance = {});

/// Deterministic JSON rendering: fixed key order, 12-significant-digit
/// numbers. Identical reports render to identical bytes.
std::string render_report(const EvaluationReport& report);

/// FNV-1a 64-bit content digest, "fnv1a64:<hex>".
std::string content_digest(std::string_view bytes);

}  // namespace ordeval
