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

#include "ordeval/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordeval {

BoundingBox::BoundingBox(double x, double y, double w, double h)
    : x(x), y(y), w(w), h(h) {
  if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(w) &&
        std::isfinite(h))) {
    throw std::invalid_argument("BoundingBox: coordinates must be finite");
  }
  if (!(w > 0.0 && h > 0.0)) {
    throw std::invalid_argument("BoundingBox: width and height must be > 0");
  }
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix =
      std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy =
      std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

DamageState::DamageState(int index) : index_(index) {
  if (index < 0 || index >= kNumClasses) {
    throw std::invalid_argument("DamageState: index must be in [0, " +
                                std::to_string(kNumClasses - 1) + "]");
  }
}

std::string DamageState::label() const {
  return "DS" + std::to_string(index_);
}

int argmax_class(const std::array<double, kNumClasses>& values) {
  int best = 0;
  for (int k = 1; k < kNumClasses; ++k) {
    if (values[static_cast<std::size_t>(k)] >
        values[static_cast<std::size_t>(best)]) {
      best = k;
    }
  }
  return best;
}

Detection::Detection(std::int64_t image_id, BoundingBox box, double confidence,
                     DamageState predicted_class,
                     std::optional<std::array<double, kNumClasses>> class_probs)
    : image_id(image_id),
      box(box),
      confidence(confidence),
      predicted_class(predicted_class),
      class_probs(std::move(class_probs)) {
  if (!(std::isfinite(confidence) && confidence >= 0.0 && confidence <= 1.0)) {
    throw std::invalid_argument("Detection: confidence must be in [0, 1]");
  }
  if (this->class_probs) {
    for (double p : *this->class_probs) {
      if (!(std::isfinite(p) && p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(
            "Detection: class probability out of [0, 1]");
      }
    }
    if (argmax_class(*this->class_probs) != predicted_class.index()) {
      throw std::invalid_argument(
          "Detection: predicted_class disagrees with argmax(class_probs)");
    }
  }
}

}  // namespace ordeval
