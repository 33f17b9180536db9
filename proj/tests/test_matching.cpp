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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "helpers.hpp"
#include "ordeval/matching.hpp"

using namespace ordeval;
using testing::det;
using testing::gt;

namespace {

// Identity of a match that survives permutation of the detection list:
// (image, confidence, predicted class, box x) names the detection,
// instance_id names the ground truth.
using MatchKey = std::tuple<std::int64_t, double, int, double, std::int64_t>;

std::set<MatchKey> canonical(const Dataset& dataset, const PredictionSet& preds,
                             const MatchResult& match) {
  std::set<MatchKey> keys;
  for (const MatchedPair& pair : match.matched) {
    const Detection& d = preds.detections[pair.detection_index];
    keys.insert({d.image_id, d.confidence, d.predicted_class.index(), d.box.x,
                 dataset.ground_truth[pair.gt_index].instance_id});
  }
  return keys;
}

}  // namespace

TEST_CASE("single pair above threshold") {
  // iou([0,0,10,10],[0,0,10,6]) = 60 / 100 = 0.6
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 2, 1)}, 1);
  const PredictionSet preds{{det(1, {0, 0, 10, 6}, 0.8, 2)}};
  const MatchResult match = match_greedy(dataset, preds);
  REQUIRE(match.matched.size() == 1);
  CHECK(match.matched[0].iou == doctest::Approx(0.6));
  CHECK(match.unmatched_detections.empty());
  CHECK(match.unmatched_ground_truth.empty());
}

TEST_CASE("higher confidence wins the only ground truth") {
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 2, 1)}, 1);
  const PredictionSet preds{{det(1, {0, 0, 10, 9}, 0.9, 2),
                             det(1, {0, 0, 10, 8}, 0.8, 2)}};
  const MatchResult match = match_greedy(dataset, preds);
  REQUIRE(match.matched.size() == 1);
  CHECK(match.matched[0].detection_index == 0);
  REQUIRE(match.unmatched_detections.size() == 1);
  CHECK(match.unmatched_detections[0] == 1);
}

TEST_CASE("empty predictions leave all ground truths unmatched") {
  const Dataset dataset = testing::dataset_for(
      {gt(1, {0, 0, 10, 10}, 0, 1), gt(1, {20, 0, 10, 10}, 1, 2),
       gt(2, {0, 0, 10, 10}, 2, 3)},
      2);
  const MatchResult match = match_greedy(dataset, PredictionSet{});
  CHECK(match.matched.empty());
  CHECK(match.unmatched_detections.empty());
  CHECK(match.unmatched_ground_truth.size() == 3);
}

TEST_CASE("confidence ties fall back to input order") {
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 0, 1)}, 1);
  const PredictionSet preds{{det(1, {0, 0, 10, 8}, 0.7, 0),
                             det(1, {0, 0, 10, 9}, 0.7, 0)}};
  const MatchResult match = match_greedy(dataset, preds);
  REQUIRE(match.matched.size() == 1);
  CHECK(match.matched[0].detection_index == 0);
}

TEST_CASE("iou ties resolve toward the lowest instance id") {
  const Dataset dataset = testing::dataset_for(
      {gt(1, {0, 0, 10, 10}, 0, 7), gt(1, {0, 0, 10, 10}, 0, 3)}, 1);
  const PredictionSet preds{{det(1, {0, 0, 10, 10}, 0.9, 0)}};
  const MatchResult match = match_greedy(dataset, preds);
  REQUIRE(match.matched.size() == 1);
  CHECK(dataset.ground_truth[match.matched[0].gt_index].instance_id == 3);
}

TEST_CASE("class-aware matching only pairs equal classes") {
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 2, 1)}, 1);
  const PredictionSet preds{{det(1, {0, 0, 10, 10}, 0.9, 3)}};

  MatchOptions opts;
  opts.class_aware = true;
  const MatchResult aware = match_greedy(dataset, preds, opts);
  CHECK(aware.matched.empty());
  CHECK(aware.unmatched_detections.size() == 1);
  CHECK(aware.unmatched_ground_truth.size() == 1);

  const MatchResult agnostic = match_greedy(dataset, preds);
  CHECK(agnostic.matched.size() == 1);
}

TEST_CASE("matching never crosses images") {
  // The detection on image 2 sits exactly on image 1's instance.
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 0, 1)}, 2);
  const PredictionSet preds{{det(2, {0, 0, 10, 10}, 0.9, 0)}};
  const MatchResult match = match_greedy(dataset, preds);
  CHECK(match.matched.empty());
  CHECK(match.unmatched_detections.size() == 1);
  CHECK(match.unmatched_ground_truth.size() == 1);
}

TEST_CASE("threshold validation and dangling references") {
  const Dataset dataset = testing::dataset_for({gt(1, {0, 0, 10, 10}, 0, 1)}, 1);
  MatchOptions opts;
  opts.iou_threshold = 0.0;
  CHECK_THROWS_AS(match_greedy(dataset, PredictionSet{}, opts),
                  std::invalid_argument);
  opts.iou_threshold = 1.25;
  CHECK_THROWS_AS(match_greedy(dataset, PredictionSet{}, opts),
                  std::invalid_argument);

  const PredictionSet dangling{{det(42, {0, 0, 10, 10}, 0.9, 0)}};
  CHECK_THROWS_AS(match_greedy(dataset, dangling), ParseError);
}

TEST_CASE("partition and threshold monotonicity over random fixtures") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const testing::RandomFixture fixture = testing::random_cell_fixture(rng, 8);
    std::size_t previous_matched = fixture.predictions.detections.size() + 1;
    for (double threshold : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      MatchOptions opts;
      opts.iou_threshold = threshold;
      const MatchResult match =
          match_greedy(fixture.dataset, fixture.predictions, opts);
      CHECK(match.matched.size() + match.unmatched_detections.size() ==
            fixture.predictions.detections.size());
      CHECK(match.matched.size() + match.unmatched_ground_truth.size() ==
            fixture.dataset.ground_truth.size());
      for (const MatchedPair& pair : match.matched)
        CHECK(pair.iou >= threshold);
      // Raising the threshold never yields more matches.
      CHECK(match.matched.size() <= previous_matched);
      previous_matched = match.matched.size();
    }
  }
}

TEST_CASE("result is invariant under detection permutation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const testing::RandomFixture fixture = testing::random_cell_fixture(
        rng, 6, 6, /*distinct_confidences=*/true);
    const MatchResult baseline =
        match_greedy(fixture.dataset, fixture.predictions);

    PredictionSet shuffled = fixture.predictions;
    std::shuffle(shuffled.detections.begin(), shuffled.detections.end(), rng);
    const MatchResult permuted = match_greedy(fixture.dataset, shuffled);

    CHECK(canonical(fixture.dataset, fixture.predictions, baseline) ==
          canonical(fixture.dataset, shuffled, permuted));
    CHECK(baseline.unmatched_detections.size() ==
          permuted.unmatched_detections.size());
  }
}

TEST_CASE("class-aware matching decomposes per class") {
  // Classes never compete for a ground truth under class-aware matching,
  // so matching the full sets equals the union of per-class matchings.
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 12; ++trial) {
    const testing::RandomFixture fixture = testing::random_cell_fixture(rng, 6);
    MatchOptions opts;
    opts.class_aware = true;
    const MatchResult full =
        match_greedy(fixture.dataset, fixture.predictions, opts);

    std::size_t per_class_total = 0;
    for (int cls = 0; cls < kNumClasses; ++cls) {
      std::vector<GroundTruthInstance> gts;
      for (const auto& g : fixture.dataset.ground_truth)
        if (g.true_class.index() == cls) gts.push_back(g);
      std::vector<Detection> dets;
      for (const auto& d : fixture.predictions.detections)
        if (d.predicted_class.index() == cls) dets.push_back(d);
      per_class_total += match_greedy(gts, dets, MatchOptions{}).matched.size();
    }
    CHECK(full.matched.size() == per_class_total);
  }
}

TEST_CASE("thread count does not change the result") {
  std::mt19937_64 rng(5150);
  const testing::RandomFixture fixture = testing::random_cell_fixture(rng, 24);
  MatchOptions serial;
  serial.threads = 1;
  const MatchResult baseline =
      match_greedy(fixture.dataset, fixture.predictions, serial);
  for (int threads : {2, 3, 8}) {
    MatchOptions opts;
    opts.threads = threads;
    CHECK(match_greedy(fixture.dataset, fixture.predictions, opts) == baseline);
  }
}
