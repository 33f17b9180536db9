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

#include <cstdint>
#include <optional>
#include <string_view>

#include "ordeval/dataset.hpp"

namespace ordeval {

enum class SynthScenario {
  kPerfect,   // predictions identical to the ground truth, confidence 1
  kOffByOne,  // every predicted class exactly one level off
  kCollapse,  // imbalanced ground truth, predictions confined to DS0..DS2
  kRandom,    // jittered boxes, random classes and confidences
};

std::optional<SynthScenario> parse_scenario(std::string_view name);
std::string_view scenario_name(SynthScenario scenario);

struct SynthParams {
  std::uint64_t seed = 42;
  int num_images = 40;
  int min_instances_per_image = 2;
  int max_instances_per_image = 6;
  // Extra spurious detections per image (collapse / random scenarios).
  double false_positive_rate = 0.15;
};

struct SynthFixture {
  Dataset dataset;
  PredictionSet predictions;
};

/// Deterministic fixture generation: the same seed and parameters always
/// produce the same values (and therefore byte-identical files).
/// Ground-truth boxes sit in disjoint grid cells, so each prediction
/// overlaps at most one instance.
SynthFixture synth_fixture(SynthScenario scenario, const SynthParams& params = {});

}  // namespace ordeval
