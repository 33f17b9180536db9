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

#include "ordeval/types.hpp"

namespace ordeval {

/// Element-level failure observations for a residential wood-frame
/// building (archetypes T1-T5).
struct ElementObservation {
  double roof_covering_damage_pct = 0.0;     // [0, 100]
  int windows_doors_failed = 0;              // >= 0
  int roof_sheathing_sections_failed = 0;    // >= 0
  double roof_sheathing_failed_pct = 0.0;    // [0, 100]
  bool roof_to_wall_failure = false;

  bool operator==(const ElementObservation&) const = default;
};

/// Damage state from the element decision matrix. Each element maps to a
/// level on its own; the building takes the maximum (any element alone is
/// sufficient):
///   roof covering:   <2% -> DS0, 2-15% -> DS1, 15-50% -> DS2, >=50% -> DS3
///   windows/doors:   0 -> DS0, 1 -> DS1, 2-3 -> DS2, >3 -> DS3
///   roof sheathing:  0 sections -> DS0, 1-3 -> DS2,
///                    >3 sections below 35% -> DS3, >=35% -> DS4
///   roof-to-wall:    failure -> DS4
/// Boundary values fall into the more severe bucket.
DamageState classify_damage(const ElementObservation& obs);

}  // namespace ordeval
