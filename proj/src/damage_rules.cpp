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

#include "ordeval/damage_rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ordeval {

namespace {

void validate(const ElementObservation& obs) {
  if (!(std::isfinite(obs.roof_covering_damage_pct) &&
        obs.roof_covering_damage_pct >= 0.0 &&
        obs.roof_covering_damage_pct <= 100.0))
    throw std::invalid_argument(
        "classify_damage: roof_covering_damage_pct must be in [0, 100]");
  if (!(std::isfinite(obs.roof_sheathing_failed_pct) &&
        obs.roof_sheathing_failed_pct >= 0.0 &&
        obs.roof_sheathing_failed_pct <= 100.0))
    throw std::invalid_argument(
        "classify_damage: roof_sheathing_failed_pct must be in [0, 100]");
  if (obs.windows_doors_failed < 0)
    throw std::invalid_argument(
        "classify_damage: windows_doors_failed must be >= 0");
  if (obs.roof_sheathing_sections_failed < 0)
    throw std::invalid_argument(
        "classify_damage: roof_sheathing_sections_failed must be >= 0");
  if (obs.roof_sheathing_sections_failed > 0 &&
      !(obs.roof_sheathing_failed_pct > 0.0))
    throw std::invalid_argument(
        "classify_damage: failed sheathing sections imply a positive "
        "failed percentage");
}

int roof_covering_level(double pct) {
  if (pct >= 50.0) return 3;
  if (pct >= 15.0) return 2;
  if (pct >= 2.0) return 1;
  return 0;
}

int windows_doors_level(int failed) {
  if (failed > 3) return 3;
  if (failed >= 2) return 2;
  if (failed == 1) return 1;
  return 0;
}

int sheathing_level(int sections, double pct) {
  if (pct >= 35.0) return 4;
  if (sections > 3) return 3;
  if (sections >= 1) return 2;
  // No sheathing failure cannot separate DS0 from DS1 on its own.
  return 0;
}

}  // namespace

DamageState classify_damage(const ElementObservation& obs) {
  validate(obs);
  if (obs.roof_to_wall_failure) return DamageState(4);
  int level = roof_covering_level(obs.roof_covering_damage_pct);
  level = std::max(level, windows_doors_level(obs.windows_doors_failed));
  level = std::max(level, sheathing_level(obs.roof_sheathing_sections_failed,
                                          obs.roof_sheathing_failed_pct));
  return DamageState(level);
}

}  // namespace ordeval
