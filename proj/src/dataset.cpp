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

#include "ordeval/dataset.hpp"

#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <json.hpp>

namespace ordeval {

using nlohmann::json;
using nlohmann::ordered_json;

const std::array<std::string, kNumClasses>& Dataset::class_names() {
  static const std::array<std::string, kNumClasses> names = {
      "DS0", "DS1", "DS2", "DS3", "DS4"};
  return names;
}

ParseError::ParseError(ParseErrorKind kind, std::string path,
                       const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      kind_(kind),
      path_(std::move(path)) {}

namespace {

[[noreturn]] void fail_schema(const std::string& path, const std::string& msg) {
  throw ParseError(ParseErrorKind::kSchema, path, msg);
}

[[noreturn]] void fail_semantic(const std::string& path,
                                const std::string& msg) {
  throw ParseError(ParseErrorKind::kSemantic, path, msg);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseErrorKind::kSyntax, "", e.what());
  }
}

const json& require_field(const json& obj, const std::string& path,
                          const char* name) {
  if (!obj.is_object()) fail_schema(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) fail_schema(path, std::string("missing field '") + name + "'");
  return *it;
}

std::int64_t require_int(const json& obj, const std::string& path,
                         const char* name) {
  const json& v = require_field(obj, path, name);
  if (!v.is_number_integer())
    fail_schema(path + "." + name, "expected an integer");
  return v.get<std::int64_t>();
}

double require_number(const json& obj, const std::string& path,
                      const char* name) {
  const json& v = require_field(obj, path, name);
  if (!v.is_number()) fail_schema(path + "." + name, "expected a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& path,
                           const char* name) {
  const json& v = require_field(obj, path, name);
  if (!v.is_string()) fail_schema(path + "." + name, "expected a string");
  return v.get<std::string>();
}

BoundingBox require_bbox(const json& obj, const std::string& path) {
  const json& v = require_field(obj, path, "bbox");
  const std::string bpath = path + ".bbox";
  if (!v.is_array() || v.size() != 4)
    fail_schema(bpath, "expected an array of 4 numbers [x, y, w, h]");
  double c[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number())
      fail_schema(bpath + "[" + std::to_string(i) + "]", "expected a number");
    c[i] = v[i].get<double>();
  }
  if (!(c[2] > 0.0 && c[3] > 0.0))
    fail_semantic(bpath, "box width and height must be > 0");
  try {
    return BoundingBox(c[0], c[1], c[2], c[3]);
  } catch (const std::invalid_argument& e) {
    fail_semantic(bpath, e.what());
  }
}

int require_category_id(const json& obj, const std::string& path) {
  const std::int64_t cid = require_int(obj, path, "category_id");
  if (cid < 0 || cid >= kNumClasses)
    fail_semantic(path + ".category_id",
                  "category id " + std::to_string(cid) + " out of range [0, " +
                      std::to_string(kNumClasses - 1) + "]");
  return static_cast<int>(cid);
}

}  // namespace

Dataset parse_ground_truth(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail_schema("", "top level must be an object");

  Dataset dataset;

  const json& images = require_field(doc, "", "images");
  if (!images.is_array()) fail_schema("images", "expected an array");
  std::unordered_set<std::int64_t> image_ids;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string path = "images[" + std::to_string(i) + "]";
    const json& im = images[i];
    ImageInfo info{
        require_int(im, path, "id"),
        require_string(im, path, "file_name"),
        0,
        0,
    };
    const std::int64_t w = require_int(im, path, "width");
    const std::int64_t h = require_int(im, path, "height");
    if (w <= 0 || h <= 0)
      fail_semantic(path, "image width and height must be > 0");
    info.width = static_cast<int>(w);
    info.height = static_cast<int>(h);
    if (!image_ids.insert(info.id).second)
      fail_semantic(path + ".id",
                    "duplicate image id " + std::to_string(info.id));
    dataset.images.push_back(std::move(info));
  }

  const json& categories = require_field(doc, "", "categories");
  if (!categories.is_array()) fail_schema("categories", "expected an array");
  std::set<int> seen_categories;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const std::string path = "categories[" + std::to_string(i) + "]";
    const std::int64_t raw_id = require_int(categories[i], path, "id");
    if (raw_id < 0 || raw_id >= kNumClasses)
      fail_semantic(path + ".id", "category id " + std::to_string(raw_id) +
                                      " out of range [0, " +
                                      std::to_string(kNumClasses - 1) + "]");
    const int cid = static_cast<int>(raw_id);
    if (!seen_categories.insert(cid).second)
      fail_semantic(path + ".id", "duplicate category id");
    const std::string name = require_string(categories[i], path, "name");
    if (name != Dataset::class_names()[static_cast<std::size_t>(cid)])
      fail_semantic(path + ".name",
                    "category " + std::to_string(cid) + " must be named '" +
                        Dataset::class_names()[static_cast<std::size_t>(cid)] +
                        "', got '" + name + "'");
  }
  if (seen_categories.size() != static_cast<std::size_t>(kNumClasses))
    fail_semantic("categories",
                  "category ids must form exactly the set {0..4}");

  const json& annotations = require_field(doc, "", "annotations");
  if (!annotations.is_array()) fail_schema("annotations", "expected an array");
  std::unordered_set<std::int64_t> instance_ids;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const std::string path = "annotations[" + std::to_string(i) + "]";
    const json& an = annotations[i];
    const std::int64_t id = require_int(an, path, "id");
    if (!instance_ids.insert(id).second)
      fail_semantic(path + ".id",
                    "duplicate annotation id " + std::to_string(id));
    const std::int64_t image_id = require_int(an, path, "image_id");
    if (image_ids.find(image_id) == image_ids.end())
      fail_semantic(path + ".image_id",
                    "annotation " + std::to_string(id) +
                        " references unknown image " + std::to_string(image_id));
    const BoundingBox box = require_bbox(an, path);
    const std::int64_t raw_category = require_int(an, path, "category_id");
    if (raw_category < 0 || raw_category >= kNumClasses)
      fail_semantic(path + ".category_id",
                    "annotation " + std::to_string(id) + ": category id " +
                        std::to_string(raw_category) + " out of range [0, " +
                        std::to_string(kNumClasses - 1) + "]");
    dataset.ground_truth.push_back(GroundTruthInstance{
        image_id, box, DamageState(static_cast<int>(raw_category)), id});
  }

  return dataset;
}

PredictionSet parse_predictions(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_array()) fail_schema("", "top level must be an array");

  PredictionSet predictions;
  predictions.detections.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    const json& entry = doc[i];
    if (!entry.is_object()) fail_schema(path, "expected an object");

    const std::int64_t image_id = require_int(entry, path, "image_id");
    const BoundingBox box = require_bbox(entry, path);
    const double score = require_number(entry, path, "score");
    if (!(std::isfinite(score) && score >= 0.0 && score <= 1.0))
      fail_semantic(path + ".score", "score must be in [0, 1]");
    const int category = require_category_id(entry, path);

    std::optional<std::array<double, kNumClasses>> probs;
    if (auto it = entry.find("probs"); it != entry.end()) {
      const std::string ppath = path + ".probs";
      if (!it->is_array() || it->size() != static_cast<std::size_t>(kNumClasses))
        fail_schema(ppath, "expected an array of " +
                               std::to_string(kNumClasses) + " numbers");
      std::array<double, kNumClasses> values{};
      for (int k = 0; k < kNumClasses; ++k) {
        const json& p = (*it)[static_cast<std::size_t>(k)];
        if (!p.is_number())
          fail_schema(ppath + "[" + std::to_string(k) + "]",
                      "expected a number");
        values[static_cast<std::size_t>(k)] = p.get<double>();
        if (!(std::isfinite(values[static_cast<std::size_t>(k)]) &&
              values[static_cast<std::size_t>(k)] >= 0.0 &&
              values[static_cast<std::size_t>(k)] <= 1.0))
          fail_semantic(ppath + "[" + std::to_string(k) + "]",
                        "probability out of [0, 1]");
      }
      const int am = argmax_class(values);
      if (am != category)
        fail_semantic(path,
                      "category_id " + std::to_string(category) +
                          " disagrees with argmax(probs) = " +
                          std::to_string(am));
      probs = values;
    }

    predictions.detections.emplace_back(image_id, box, score,
                                        DamageState(category), probs);
  }
  return predictions;
}

std::string serialize_ground_truth(const Dataset& dataset) {
  ordered_json doc;
  doc["images"] = ordered_json::array();
  for (const ImageInfo& im : dataset.images) {
    doc["images"].push_back({{"id", im.id},
                             {"file_name", im.file_name},
                             {"width", im.width},
                             {"height", im.height}});
  }
  doc["annotations"] = ordered_json::array();
  for (const GroundTruthInstance& gt : dataset.ground_truth) {
    doc["annotations"].push_back(
        {{"id", gt.instance_id},
         {"image_id", gt.image_id},
         {"bbox", {gt.box.x, gt.box.y, gt.box.w, gt.box.h}},
         {"category_id", gt.true_class.index()}});
  }
  doc["categories"] = ordered_json::array();
  for (int k = 0; k < kNumClasses; ++k) {
    doc["categories"].push_back(
        {{"id", k}, {"name", Dataset::class_names()[static_cast<std::size_t>(k)]}});
  }
  return doc.dump(2) + "\n";
}

std::string serialize_predictions(const PredictionSet& predictions) {
  ordered_json doc = ordered_json::array();
  for (const Detection& det : predictions.detections) {
    ordered_json entry = {
        {"image_id", det.image_id},
        {"bbox", {det.box.x, det.box.y, det.box.w, det.box.h}},
        {"score", det.confidence},
        {"category_id", det.predicted_class.index()}};
    if (det.class_probs) entry["probs"] = *det.class_probs;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ordeval
