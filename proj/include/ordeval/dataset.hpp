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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordeval/types.hpp"

namespace ordeval {

/// Validated ground truth: images plus annotated instances.
/// Category names are fixed to DS0..DS4.
struct Dataset {
  std::vector<ImageInfo> images;
  std::vector<GroundTruthInstance> ground_truth;

  static const std::array<std::string, kNumClasses>& class_names();

  bool operator==(const Dataset&) const = default;
};

struct PredictionSet {
  std::vector<Detection> detections;

  bool operator==(const PredictionSet&) const = default;
};

enum class ParseErrorKind {
  kSyntax,    // malformed document
  kSchema,    // missing field / wrong type / wrong shape
  kSemantic,  // well-formed but invalid (dangling reference, bad range, ...)
};

/// Parse or validation failure. `path()` points at the offending element,
/// e.g. "annotations[3].category_id".
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::string path, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  ParseErrorKind kind_;
  std::string path_;
};

class EmptyGroundTruthError : public std::runtime_error {
 public:
  EmptyGroundTruthError() : std::runtime_error("ground truth has no instances") {}
};

// Ground-truth document schema (UTF-8 JSON):
//   { "images":      [{"id", "file_name", "width", "height"}, ...],
//     "annotations": [{"id", "image_id", "bbox":[x,y,w,h], "category_id"}, ...],
//     "categories":  [{"id":0..4, "name":"DS0".."DS4"}, ...] }
Dataset parse_ground_truth(std::string_view text);

// Prediction document schema: array of
//   {"image_id", "bbox":[x,y,w,h], "score", "category_id", "probs":[5]? }
// When "probs" is present the predicted class is recomputed as its argmax
// (lowest index wins ties) and cross-checked against "category_id".
PredictionSet parse_predictions(std::string_view text);

// Fixture serializers; parse(serialize(x)) round-trips to an equal value.
std::string serialize_ground_truth(const Dataset& dataset);
std::string serialize_predictions(const PredictionSet& predictions);

}  // namespace ordeval
