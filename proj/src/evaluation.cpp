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

#include "ordeval/evaluation.hpp"

#include <cinttypes>
#include <cstdio>
#include <vector>

#include "json_writer.hpp"

#ifndef ORDEVAL_VERSION
#define ORDEVAL_VERSION "0.0.0"
#endif

namespace ordeval {

using detail::JsonWriter;

const char* tool_version() { return ORDEVAL_VERSION; }

std::string content_digest(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016" PRIx64, hash);
  return buffer;
}

DatasetSummary summarize(const Dataset& dataset) {
  DatasetSummary summary;
  summary.num_images = dataset.images.size();
  summary.num_instances = dataset.ground_truth.size();
  for (const GroundTruthInstance& gt : dataset.ground_truth)
    ++summary.per_class_instances[static_cast<std::size_t>(
        gt.true_class.index())];
  return summary;
}

EvaluationReport evaluate(const Dataset& dataset, const PredictionSet& preds,
                          const EvaluateOptions& opts,
                          const ProvenanceInfo& provenance) {
  if (dataset.ground_truth.empty()) throw EmptyGroundTruthError();

  EvaluationReport report;
  report.config = opts;
  report.provenance = provenance;
  report.dataset = summarize(dataset);
  report.num_detections = preds.detections.size();

  MatchOptions ordinal_match_opts;
  ordinal_match_opts.iou_threshold = opts.iou_threshold;
  ordinal_match_opts.class_aware = opts.ordinal_class_aware;
  ordinal_match_opts.threads = opts.threads;
  const MatchResult ordinal_match =
      match_greedy(dataset, preds, ordinal_match_opts);

  DetectionScoreOptions score_opts;
  score_opts.iou_threshold = opts.iou_threshold;
  score_opts.fixed_f1_threshold = opts.fixed_f1_threshold;
  score_opts.threads = opts.threads;
  report.detection = map_at_50(dataset, preds, score_opts);

  report.ordinal = compute_ordinal_scores(dataset, preds, ordinal_match);
  const std::vector<ClassPair> pairs =
      matched_class_pairs(dataset, preds, ordinal_match);
  report.confusion = confusion(pairs);
  return report;
}

std::string render_report(const EvaluationReport& report) {
  JsonWriter w;
  w.begin_object();

  w.key("schema_version");
  w.value(kReportSchemaVersion);
  w.key("tool");
  w.value(std::string("ordeval ") + tool_version());

  w.key("provenance");
  w.begin_object();
  w.key("ground_truth_digest");
  w.value(report.provenance.ground_truth_digest);
  w.key("predictions_digest");
  w.value(report.provenance.predictions_digest);
  w.end_object();

  w.key("config");
  w.begin_object();
  w.key("iou_threshold");
  w.value(report.config.iou_threshold);
  w.key("ordinal_matching");
  w.value(report.config.ordinal_class_aware ? "class-aware" : "class-agnostic");
  w.key("f1_mode");
  w.value(report.config.fixed_f1_threshold ? "max+fixed" : "max");
  w.key("f1_fixed_threshold");
  w.optional_value(report.config.fixed_f1_threshold);
  w.end_object();

  w.key("dataset");
  w.begin_object();
  w.key("images");
  w.value(report.dataset.num_images);
  w.key("instances");
  w.value(report.dataset.num_instances);
  w.key("per_class_instances");
  w.begin_array();
  for (std::int64_t count : report.dataset.per_class_instances) w.value(count);
  w.end_array();
  w.end_object();

  w.key("predictions");
  w.begin_object();
  w.key("detections");
  w.value(report.num_detections);
  w.end_object();

  w.key("detection");
  w.begin_object();
  w.key("per_class_ap");
  w.begin_array();
  for (const auto& ap : report.detection.per_class_ap) w.optional_value(ap);
  w.end_array();
  w.key("classes_evaluated");
  w.begin_array();
  for (int k = 0; k < kNumClasses; ++k)
    if (report.detection.per_class_ap[static_cast<std::size_t>(k)]) w.value(k);
  w.end_array();
  w.key("map50");
  w.value(report.detection.map50);
  w.key("precision");
  w.value(report.detection.precision);
  w.key("recall");
  w.value(report.detection.recall);
  w.key("f1");
  w.value(report.detection.f1);
  w.key("f1_threshold");
  w.optional_value(report.detection.f1_threshold);
  w.key("fixed_f1");
  if (report.detection.fixed) {
    w.begin_object();
    w.key("threshold");
    w.value(report.detection.fixed->threshold);
    w.key("precision");
    w.value(report.detection.fixed->precision);
    w.key("recall");
    w.value(report.detection.fixed->recall);
    w.key("f1");
    w.value(report.detection.fixed->f1);
    w.end_object();
  } else {
    w.null();
  }
  w.end_object();

  w.key("ordinal");
  w.begin_object();
  w.key("matched_count");
  w.value(report.ordinal.matched_count);
  w.key("match_rate");
  w.value(report.ordinal.match_rate);
  w.key("maoe");
  w.optional_value(report.ordinal.maoe);
  w.key("top_k");
  if (report.ordinal.matched_count > 0) {
    w.begin_array();
    for (const auto& t : report.ordinal.top_k) w.optional_value(t);
    w.end_array();
  } else {
    w.null();
  }
  w.end_object();

  w.key("confusion");
  w.begin_object();
  w.key("counts");
  w.begin_array(false);
  for (int row = 0; row < kNumClasses; ++row) {
    w.begin_array();
    for (int col = 0; col < kNumClasses; ++col)
      w.value(report.confusion.counts(row, col));
    w.end_array();
  }
  w.end_array();
  w.key("row_normalized");
  w.begin_array(false);
  for (int row = 0; row < kNumClasses; ++row) {
    w.begin_array();
    for (int col = 0; col < kNumClasses; ++col)
      w.value(report.confusion.row_normalized(row, col));
    w.end_array();
  }
  w.end_array();
  w.key("rows_defined");
  w.begin_array();
  for (bool defined : report.confusion.row_defined) w.value(defined);
  w.end_array();
  w.end_object();

  w.end_object();
  std::string text = w.str();
  text += '\n';
  return text;
}

}  // namespace ordeval
