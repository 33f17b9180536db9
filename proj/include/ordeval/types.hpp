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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

namespace ordeval {

/// Number of IN-CORE damage states (DS0..DS4).
inline constexpr int kNumClasses = 5;

/// One entry per damage class; the vector type for targets, logits,
/// probabilities and gradients.
using ClassVector = Eigen::Array<double, kNumClasses, 1>;

/// Axis-aligned rectangle in continuous pixel coordinates,
/// COCO corner+size convention. Width and height must be positive.
struct BoundingBox {
  double x;  // left edge
  double y;  // top edge
  double w;
  double h;

  BoundingBox(double x, double y, double w, double h);

  double area() const { return w * h; }
  bool operator==(const BoundingBox&) const = default;
};

/// Intersection-over-union of two boxes. 0 when disjoint, 1 iff identical.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Ordinal damage class: DS0 (undamaged) < DS1 < DS2 < DS3 < DS4 (complete).
class DamageState {
 public:
  explicit DamageState(int index);

  int index() const { return index_; }
  std::string label() const;  // "DS0".."DS4"

  /// |a - b| in class indices.
  friend int ordinal_distance(DamageState a, DamageState b) {
    return a.index_ >= b.index_ ? a.index_ - b.index_ : b.index_ - a.index_;
  }

  auto operator<=>(const DamageState&) const = default;

 private:
  int index_;
};

/// Index of the largest entry, lowest index winning ties.
int argmax_class(const std::array<double, kNumClasses>& values);

struct ImageInfo {
  std::int64_t id;
  std::string file_name;
  int width;
  int height;

  bool operator==(const ImageInfo&) const = default;
};

/// An annotated building instance.
struct GroundTruthInstance {
  std::int64_t image_id;
  BoundingBox box;
  DamageState true_class;
  std::int64_t instance_id;

  bool operator==(const GroundTruthInstance&) const = default;
};

/// A predicted building instance. `class_probs`, when present, holds the
/// detector's per-class scores; they need not sum to one (sigmoid heads emit
/// independent scores), but `predicted_class` must be their argmax with the
/// lowest index winning ties.
struct Detection {
  std::int64_t image_id;
  BoundingBox box;
  double confidence;  // in [0, 1]
  DamageState predicted_class;
  std::optional<std::array<double, kNumClasses>> class_probs;

  Detection(std::int64_t image_id, BoundingBox box, double confidence,
            DamageState predicted_class,
            std::optional<std::array<double, kNumClasses>> class_probs =
                std::nullopt);

  bool operator==(const Detection&) const = default;
};

}  // namespace ordeval
