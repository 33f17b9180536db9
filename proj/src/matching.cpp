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

#include "ordeval/matching.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace ordeval {

namespace {

struct ImageGroup {
  std::vector<std::size_t> det_indices;  // input order
  std::vector<std::size_t> gt_indices;   // input order
};

std::vector<MatchedPair> match_image(std::span<const GroundTruthInstance> gts,
                                     std::span<const Detection> dets,
                                     const ImageGroup& group,
                                     const MatchOptions& opts) {
  std::vector<std::size_t> order = group.det_indices;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dets[a].confidence > dets[b].confidence;
                   });

  std::vector<MatchedPair> matched;
  std::unordered_set<std::size_t> taken;
  for (std::size_t det_idx : order) {
    const Detection& det = dets[det_idx];
    std::size_t best_gt = 0;
    double best_iou = 0.0;
    bool found = false;
    for (std::size_t gt_idx : group.gt_indices) {
      if (taken.count(gt_idx)) continue;
      const GroundTruthInstance& gt = gts[gt_idx];
      if (opts.class_aware && gt.true_class != det.predicted_class) continue;
      const double v = iou(det.box, gt.box);
      if (v < opts.iou_threshold) continue;
      if (!found || v > best_iou ||
          (v == best_iou && gt.instance_id < gts[best_gt].instance_id)) {
        best_gt = gt_idx;
        best_iou = v;
        found = true;
      }
    }
    if (found) {
      taken.insert(best_gt);
      matched.push_back(MatchedPair{det_idx, best_gt, best_iou});
    }
  }
  return matched;
}

}  // namespace

MatchResult match_greedy(std::span<const GroundTruthInstance> gts,
                         std::span<const Detection> dets,
                         const MatchOptions& opts) {
  if (!(opts.iou_threshold > 0.0 && opts.iou_threshold <= 1.0)) {
    throw std::invalid_argument("match_greedy: iou_threshold must be in (0, 1]");
  }

  // std::map keeps images in ascending id order.
  std::map<std::int64_t, ImageGroup> groups;
  for (std::size_t i = 0; i < dets.size(); ++i)
    groups[dets[i].image_id].det_indices.push_back(i);
  for (std::size_t i = 0; i < gts.size(); ++i)
    groups[gts[i].image_id].gt_indices.push_back(i);

  std::vector<const ImageGroup*> ordered;
  ordered.reserve(groups.size());
  for (const auto& [id, group] : groups) ordered.push_back(&group);

  unsigned n_threads = opts.threads > 0
                           ? static_cast<unsigned>(opts.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads,
                                 std::max<std::size_t>(ordered.size(), 1));

  // Per-image outcomes are stored by image position, so the merged result
  // does not depend on the thread count.
  std::vector<std::vector<MatchedPair>> outcomes(ordered.size());
  if (n_threads <= 1 || ordered.size() <= 1) {
    for (std::size_t i = 0; i < ordered.size(); ++i)
      outcomes[i] = match_image(gts, dets, *ordered[i], opts);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      futures.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < ordered.size(); i += n_threads)
          outcomes[i] = match_image(gts, dets, *ordered[i], opts);
      }));
    }
    for (auto& f : futures) f.get();
  }

  MatchResult result;
  std::vector<char> det_matched(dets.size(), 0);
  std::vector<char> gt_matched(gts.size(), 0);
  for (const auto& image_matches : outcomes) {
    for (const MatchedPair& pair : image_matches) {
      det_matched[pair.detection_index] = 1;
      gt_matched[pair.gt_index] = 1;
      result.matched.push_back(pair);
    }
  }
  for (std::size_t i = 0; i < dets.size(); ++i)
    if (!det_matched[i]) result.unmatched_detections.push_back(i);
  for (std::size_t i = 0; i < gts.size(); ++i)
    if (!gt_matched[i]) result.unmatched_ground_truth.push_back(i);
  return result;
}

MatchResult match_greedy(const Dataset& dataset, const PredictionSet& preds,
                         const MatchOptions& opts) {
  std::unordered_set<std::int64_t> image_ids;
  for (const ImageInfo& im : dataset.images) image_ids.insert(im.id);
  for (std::size_t i = 0; i < preds.detections.size(); ++i) {
    if (image_ids.find(preds.detections[i].image_id) == image_ids.end()) {
      throw ParseError(ParseErrorKind::kSemantic,
                       "[" + std::to_string(i) + "].image_id",
                       "detection references unknown image " +
                           std::to_string(preds.detections[i].image_id));
    }
  }
  return match_greedy(std::span<const GroundTruthInstance>(dataset.ground_truth),
                      std::span<const Detection>(preds.detections), opts);
}

}  // namespace ordeval
