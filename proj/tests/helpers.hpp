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

#include <random>
#include <vector>

#include "ordeval/dataset.hpp"
#include "ordeval/types.hpp"

namespace ordeval::testing {

inline GroundTruthInstance gt(std::int64_t image_id, BoundingBox box,
                              int true_class, std::int64_t instance_id) {
  return GroundTruthInstance{image_id, box, DamageState(true_class),
                             instance_id};
}

inline Detection det(std::int64_t image_id, BoundingBox box, double confidence,
                     int predicted_class) {
  return Detection(image_id, box, confidence, DamageState(predicted_class));
}

inline Dataset dataset_for(std::vector<GroundTruthInstance> instances,
                           std::int64_t max_image_id) {
  Dataset dataset;
  for (std::int64_t id = 1; id <= max_image_id; ++id)
    dataset.images.push_back(
        ImageInfo{id, "img_" + std::to_string(id) + ".jpg", 2000, 2000});
  dataset.ground_truth = std::move(instances);
  return dataset;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct RandomFixture {
  Dataset dataset;
  PredictionSet predictions;
};

// Ground-truth boxes live in disjoint 400x400 grid cells (6 per image), so
// a jittered detection overlaps at most one instance above any reasonable
// IoU threshold.
inline RandomFixture random_cell_fixture(std::mt19937_64& rng, int num_images,
                                         int max_per_image = 6,
                                         bool distinct_confidences = false) {
  RandomFixture fixture;
  std::int64_t next_id = 1;
  double conf_step = 0.0;
  for (int i = 0; i < num_images; ++i) {
    const std::int64_t image_id = i + 1;
    fixture.dataset.images.push_back(
        ImageInfo{image_id, "img_" + std::to_string(image_id) + ".jpg",
                  1200, 800});
    const int instances = uniform_int(rng, 1, max_per_image);
    for (int cell = 0; cell < instances; ++cell) {
      const double x0 = (cell % 3) * 400.0;
      const double y0 = (cell / 3) * 400.0;
      const double w = uniform(rng, 100.0, 220.0);
      const double h = uniform(rng, 100.0, 220.0);
      const BoundingBox box(x0 + uniform(rng, 40.0, 120.0),
                            y0 + uniform(rng, 40.0, 120.0), w, h);
      fixture.dataset.ground_truth.push_back(
          gt(image_id, box, uniform_int(rng, 0, kNumClasses - 1), next_id++));
      if (uniform(rng, 0.0, 1.0) < 0.85) {
        const BoundingBox pred_box(box.x + uniform(rng, -40.0, 40.0),
                                   box.y + uniform(rng, -40.0, 40.0),
                                   box.w * uniform(rng, 0.75, 1.25),
                                   box.h * uniform(rng, 0.75, 1.25));
        double confidence = uniform(rng, 0.05, 0.95);
        if (distinct_confidences) confidence = 0.05 + (conf_step += 1e-4);
        fixture.predictions.detections.push_back(
            det(image_id, pred_box, confidence,
                uniform_int(rng, 0, kNumClasses - 1)));
      }
    }
  }
  return fixture;
}

}  // namespace ordeval::testing
