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

#include "ordeval/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace ordeval {

namespace {

// Deterministic draws on top of the (standard-specified) mt19937_64
// sequence; std::uniform_* distributions are implementation-defined and
// would break byte-identical fixtures across toolchains.
double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

int pick_class(std::mt19937_64& rng,
               const std::array<double, kNumClasses>& weights) {
  const double u = u01(rng);
  double cumulative = 0.0;
  for (int k = 0; k < kNumClasses; ++k) {
    cumulative += weights[static_cast<std::size_t>(k)];
    if (u < cumulative) return k;
  }
  return kNumClasses - 1;
}

constexpr int kImageWidth = 1920;
constexpr int kImageHeight = 1080;
constexpr int kGridCols = 3;
constexpr int kGridRows = 2;
constexpr int kCellsPerImage = kGridCols * kGridRows;

BoundingBox box_in_cell(std::mt19937_64& rng, int cell) {
  const double cell_w = static_cast<double>(kImageWidth) / kGridCols;
  const double cell_h = static_cast<double>(kImageHeight) / kGridRows;
  const double x0 = (cell % kGridCols) * cell_w;
  const double y0 = (cell / kGridCols) * cell_h;
  const double w = uniform_real(rng, 140.0, 360.0);
  const double h = uniform_real(rng, 120.0, 300.0);
  const double x = x0 + uniform_real(rng, 60.0, cell_w - w - 60.0);
  const double y = y0 + uniform_real(rng, 50.0, cell_h - h - 50.0);
  return BoundingBox(x, y, w, h);
}

BoundingBox jitter(std::mt19937_64& rng, const BoundingBox& box,
                   double max_shift, double max_scale_delta) {
  const double dx = uniform_real(rng, -max_shift, max_shift);
  const double dy = uniform_real(rng, -max_shift, max_shift);
  const double sw = 1.0 + uniform_real(rng, -max_scale_delta, max_scale_delta);
  const double sh = 1.0 + uniform_real(rng, -max_scale_delta, max_scale_delta);
  return BoundingBox(box.x + dx, box.y + dy, box.w * sw, box.h * sh);
}

std::array<double, kNumClasses> class_weights(SynthScenario scenario) {
  if (scenario == SynthScenario::kCollapse) {
    // Skewed toward the low-severity classes.
    return {0.40, 0.28, 0.22, 0.06, 0.04};
  }
  return {0.25, 0.22, 0.21, 0.17, 0.15};
}

int off_by_one(int true_class) {
  return true_class < kNumClasses - 1 ? true_class + 1 : true_class - 1;
}

int collapsed_class(std::mt19937_64& rng, int true_class) {
  int predicted = std::min(true_class, 2);
  if (true_class <= 2 && u01(rng) < 0.15) {
    const int shifted = predicted + (u01(rng) < 0.5 ? -1 : 1);
    predicted = std::clamp(shifted, 0, 2);
  }
  return predicted;
}

}  // namespace

std::optional<SynthScenario> parse_scenario(std::string_view name) {
  if (name == "perfect") return SynthScenario::kPerfect;
  if (name == "off-by-one") return SynthScenario::kOffByOne;
  if (name == "collapse") return SynthScenario::kCollapse;
  if (name == "random") return SynthScenario::kRandom;
  return std::nullopt;
}

std::string_view scenario_name(SynthScenario scenario) {
  switch (scenario) {
    case SynthScenario::kPerfect: return "perfect";
    case SynthScenario::kOffByOne: return "off-by-one";
    case SynthScenario::kCollapse: return "collapse";
    case SynthScenario::kRandom: return "random";
  }
  return "unknown";
}

SynthFixture synth_fixture(SynthScenario scenario, const SynthParams& params) {
  if (params.num_images <= 0)
    throw std::invalid_argument("synth_fixture: num_images must be > 0");
  if (params.min_instances_per_image < 1 ||
      params.max_instances_per_image < params.min_instances_per_image ||
      params.max_instances_per_image > kCellsPerImage)
    throw std::invalid_argument(
        "synth_fixture: instances per image must satisfy 1 <= min <= max <= " +
        std::to_string(kCellsPerImage));

  std::mt19937_64 rng(params.seed);
  const std::array<double, kNumClasses> weights = class_weights(scenario);

  SynthFixture fixture;
  std::int64_t next_instance_id = 1;
  for (int i = 0; i < params.num_images; ++i) {
    const std::int64_t image_id = i + 1;
    char name[32];
    std::snprintf(name, sizeof(name), "synth_%06d.jpg",
                  static_cast<int>(image_id));
    fixture.dataset.images.push_back(
        ImageInfo{image_id, name, kImageWidth, kImageHeight});

    const int instances = uniform_int(rng, params.min_instances_per_image,
                                      params.max_instances_per_image);
    for (int cell = 0; cell < instances; ++cell) {
      const BoundingBox box = box_in_cell(rng, cell);
      const int true_class = pick_class(rng, weights);
      fixture.dataset.ground_truth.push_back(GroundTruthInstance{
          image_id, box, DamageState(true_class), next_instance_id++});

      switch (scenario) {
        case SynthScenario::kPerfect:
          fixture.predictions.detections.emplace_back(
              image_id, box, 1.0, DamageState(true_class));
          break;
        case SynthScenario::kOffByOne:
          fixture.predictions.detections.emplace_back(
              image_id, box, 1.0, DamageState(off_by_one(true_class)));
          break;
        case SynthScenario::kCollapse: {
          const BoundingBox pred_box = jitter(rng, box, 8.0, 0.05);
          const double confidence = uniform_real(rng, 0.55, 0.98);
          fixture.predictions.detections.emplace_back(
              image_id, pred_box, confidence,
              DamageState(collapsed_class(rng, true_class)));
          break;
        }
        case SynthScenario::kRandom: {
          if (u01(rng) < 0.1) break;  // missed building
          const BoundingBox pred_box = jitter(rng, box, 60.0, 0.3);
          const double confidence = u01(rng);
          if (u01(rng) < 0.5) {
            std::array<double, kNumClasses> probs{};
            for (double& p : probs) p = u01(rng);
            fixture.predictions.detections.emplace_back(
                image_id, pred_box, confidence,
                DamageState(argmax_class(probs)), probs);
          } else {
            fixture.predictions.detections.emplace_back(
                image_id, pred_box, confidence,
                DamageState(uniform_int(rng, 0, kNumClasses - 1)));
          }
          break;
        }
      }
    }

    // Spurious detection in a guaranteed-empty cell.
    const bool wants_fp = (scenario == SynthScenario::kCollapse ||
                           scenario == SynthScenario::kRandom) &&
                          u01(rng) < params.false_positive_rate;
    if (wants_fp && instances < kCellsPerImage) {
      const BoundingBox box = box_in_cell(rng, instances);
      const int max_class =
          scenario == SynthScenario::kCollapse ? 2 : kNumClasses - 1;
      fixture.predictions.detections.emplace_back(
          image_id, box, uniform_real(rng, 0.30, 0.60),
          DamageState(uniform_int(rng, 0, max_class)));
    }
  }
  return fixture;
}

}  // namespace ordeval
