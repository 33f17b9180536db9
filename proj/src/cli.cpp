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

#include "ordeval/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordeval/damage_rules.hpp"
#include "ordeval/dataset.hpp"
#include "ordeval/evaluation.hpp"
#include "ordeval/ordinal_losses.hpp"
#include "ordeval/ordinal_targets.hpp"
#include "ordeval/synth.hpp"
#include "json_writer.hpp"

namespace ordeval {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  return static_cast<bool>(out);
}

/// "inf"/"unbounded" or an integer radius in [0, 4].
std::optional<int> parse_k(const std::string& text, std::ostream& err) {
  if (text == "inf" || text == "unbounded") return std::nullopt;
  try {
    const int k = std::stoi(text);
    if (k >= 0 && k < kNumClasses) return k;
  } catch (const std::exception&) {
  }
  err << "error: --k must be an integer in [0, " << kNumClasses - 1
      << "] or 'inf'\n";
  throw CLI::RuntimeError(kExitInputError);
}

struct EvaluateArgs {
  std::string gt_path;
  std::string pred_path;
  double iou = 0.5;
  std::string ordinal_matching = "class-agnostic";
  std::string f1_mode = "max";
  int threads = 0;
  std::string out_path;
  std::string confusion_csv_path;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out,
                 std::ostream& err) {
  const auto gt_bytes = read_file(args.gt_path);
  if (!gt_bytes) {
    err << "error: cannot read ground-truth file '" << args.gt_path << "'\n";
    return kExitInputError;
  }
  const auto pred_bytes = read_file(args.pred_path);
  if (!pred_bytes) {
    err << "error: cannot read prediction file '" << args.pred_path << "'\n";
    return kExitInputError;
  }

  EvaluateOptions opts;
  opts.iou_threshold = args.iou;
  opts.ordinal_class_aware = args.ordinal_matching == "class-aware";
  opts.threads = args.threads;
  if (args.f1_mode != "max") {
    if (args.f1_mode.rfind("fixed:", 0) != 0) {
      err << "error: --f1 must be 'max' or 'fixed:<threshold>'\n";
      return kExitInputError;
    }
    try {
      opts.fixed_f1_threshold = std::stod(args.f1_mode.substr(6));
    } catch (const std::exception&) {
      err << "error: bad threshold in '" << args.f1_mode << "'\n";
      return kExitInputError;
    }
  }

  ProvenanceInfo provenance{content_digest(*gt_bytes),
                            content_digest(*pred_bytes)};

  EvaluationReport report;
  try {
    const Dataset dataset = parse_ground_truth(*gt_bytes);
    const PredictionSet preds = parse_predictions(*pred_bytes);
    report = evaluate(dataset, preds, opts, provenance);
  } catch (const EmptyGroundTruthError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEmptyGroundTruth;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string text = render_report(report);
  if (args.out_path.empty()) {
    out << text;
  } else if (!write_file(args.out_path, text)) {
    err << "error: cannot write report to '" << args.out_path << "'\n";
    return kExitInputError;
  }
  if (!args.confusion_csv_path.empty() &&
      !write_file(args.confusion_csv_path, confusion_csv(report.confusion))) {
    err << "error: cannot write confusion CSV to '" << args.confusion_csv_path
        << "'\n";
    return kExitInputError;
  }
  return kExitOk;
}

struct TargetsArgs {
  int true_class = 0;
  double psi = 0.5;
  std::string k = "inf";
  double scale = 1.0;
};

int cmd_targets(const TargetsArgs& args, std::ostream& out, std::ostream& err) {
  try {
    SoftTargetConfig config;
    config.psi = args.psi;
    config.k_neighbors = parse_k(args.k, err);
    const SoftTargetDistribution dist =
        soft_targets(DamageState(args.true_class), args.scale, config);

    ordered_json doc;
    doc["true_class"] = dist.true_class.index();
    doc["psi"] = config.psi;
    doc["k"] = config.k_neighbors ? json(*config.k_neighbors)
                                  : json("unbounded");
    doc["scale"] = dist.scale;
    doc["raw_weights"] = std::vector<double>(
        dist.raw_weights.data(), dist.raw_weights.data() + kNumClasses);
    doc["targets"] = std::vector<double>(dist.targets.data(),
                                         dist.targets.data() + kNumClasses);
    doc["sum_targets"] = dist.targets.sum();
    out << doc.dump(2) << "\n";
    return kExitOk;
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

struct LossArgs {
  std::string batch_path;
  double psi = 0.5;
  std::string k = "1";
  double gamma = 1.5;
  double lambda = 0.0;
  double scale = 1.0;
  std::string base = "bce";
  bool penalty_detached = false;
  bool fd_check = false;
  std::string out_path;
};

struct LossRecord {
  ClassVector z;
  DamageState true_class;
  double scale;
  double psi;
  std::optional<int> k;
  LossConfig config;
  BaseLoss base;
};

LossRecord parse_loss_record(const json& entry, const LossArgs& defaults,
                             std::optional<int> default_k) {
  if (!entry.is_object()) throw std::invalid_argument("record must be an object");
  const auto& zj = entry.at("z");
  if (!zj.is_array() || zj.size() != static_cast<std::size_t>(kNumClasses))
    throw std::invalid_argument("'z' must be an array of 5 numbers");
  ClassVector z;
  for (int i = 0; i < kNumClasses; ++i) {
    if (!zj[static_cast<std::size_t>(i)].is_number())
      throw std::invalid_argument("'z' must be an array of 5 numbers");
    z[i] = zj[static_cast<std::size_t>(i)].get<double>();
  }

  const int true_class = entry.at("true_class").get<int>();

  std::optional<int> k = default_k;
  if (auto it = entry.find("k"); it != entry.end()) {
    const int raw = it->get<int>();
    if (raw == -1)
      k = std::nullopt;  // unbounded
    else if (raw >= 0 && raw < kNumClasses)
      k = raw;
    else
      throw std::invalid_argument("'k' must be in [0, 4] or -1 for unbounded");
  }

  LossRecord record{
      z,
      DamageState(true_class),
      entry.value("s", defaults.scale),
      entry.value("psi", defaults.psi),
      k,
      LossConfig{entry.value("gamma", defaults.gamma),
                 entry.value("lambda", defaults.lambda),
                 defaults.penalty_detached},
      BaseLoss::kBce,
  };
  const std::string base = entry.value("base", defaults.base);
  if (base == "focal")
    record.base = BaseLoss::kFocal;
  else if (base != "bce")
    throw std::invalid_argument("'base' must be \"bce\" or \"focal\"");
  return record;
}

LossOutput eval_loss_record(const LossRecord& record) {
  const SoftTargetDistribution targets =
      soft_targets(record.true_class, record.scale,
                   SoftTargetConfig{record.psi, record.k});
  return penalized_loss(record.z, targets, record.config, record.base);
}

double fd_max_rel_error(const LossRecord& record, const LossOutput& output) {
  constexpr double kStep = 1e-6;
  constexpr double kTolerance = 1e-6;
  constexpr double kAbsFloor = 1e-9;

  // Under the detached convention the factor is a constant of the
  // evaluation point, so the reference differentiates factor * base(z).
  LossRecord probe = record;
  double factor = 1.0;
  if (record.config.penalty_detached) {
    factor = ordinal_penalty_factor(record.config.lambda,
                                    *output.expected_class, record.true_class);
    probe.config.lambda = 0.0;
  }

  double worst = 0.0;
  for (int j = 0; j < kNumClasses; ++j) {
    LossRecord plus = probe;
    plus.z[j] += kStep;
    LossRecord minus = probe;
    minus.z[j] -= kStep;
    const double fd = factor *
                      (eval_loss_record(plus).value -
                       eval_loss_record(minus).value) /
                      (2.0 * kStep);
    // Denominator floor folds the absolute floor in: components below
    // kAbsFloor / kTolerance pass when they agree within kAbsFloor.
    const double scale = std::max({std::abs(fd), std::abs(output.gradient[j]),
                                   kAbsFloor / kTolerance});
    worst = std::max(worst, std::abs(fd - output.gradient[j]) / scale);
  }
  return worst;
}

int cmd_loss(const LossArgs& args, std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(args.batch_path);
  if (!bytes) {
    err << "error: cannot read batch file '" << args.batch_path << "'\n";
    return kExitInputError;
  }
  std::optional<int> default_k;
  try {
    default_k = parse_k(args.k, err);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  }

  std::ostringstream result;
  constexpr double kFdTolerance = 1e-6;
  double worst_fd = 0.0;
  std::istringstream lines(*bytes);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    LossOutput output;
    std::optional<double> fd_error;
    try {
      const json entry = json::parse(line);
      const LossRecord record = parse_loss_record(entry, args, default_k);
      output = eval_loss_record(record);
      if (args.fd_check) {
        fd_error = fd_max_rel_error(record, output);
        worst_fd = std::max(worst_fd, *fd_error);
      }
    } catch (const std::exception& e) {
      err << "error: record " << line_number << ": " << e.what() << "\n";
      return kExitInputError;
    }
    ordered_json doc;
    doc["value"] = output.value;
    doc["gradient"] = std::vector<double>(output.gradient.data(),
                                          output.gradient.data() + kNumClasses);
    doc["expected_class"] = *output.expected_class;
    if (fd_error) doc["fd_max_rel_error"] = *fd_error;
    result << doc.dump() << "\n";
  }

  const std::string text = result.str();
  if (args.out_path.empty()) {
    out << text;
  } else if (!write_file(args.out_path, text)) {
    err << "error: cannot write output to '" << args.out_path << "'\n";
    return kExitInputError;
  }
  if (args.fd_check && worst_fd >= kFdTolerance) {
    err << "error: finite-difference check failed, max relative error "
        << worst_fd << "\n";
    return kExitFdCheckFailed;
  }
  return kExitOk;
}

int cmd_classify(const std::string& path, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  const auto bytes = read_file(path);
  if (!bytes) {
    err << "error: cannot read observation file '" << path << "'\n";
    return kExitInputError;
  }
  std::ostringstream result;
  std::istringstream lines(*bytes);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json entry = json::parse(line);
      ElementObservation obs;
      obs.roof_covering_damage_pct =
          entry.value("roof_covering_damage_pct", 0.0);
      obs.windows_doors_failed = entry.value("windows_doors_failed", 0);
      obs.roof_sheathing_sections_failed =
          entry.value("roof_sheathing_sections_failed", 0);
      obs.roof_sheathing_failed_pct =
          entry.value("roof_sheathing_failed_pct", 0.0);
      obs.roof_to_wall_failure = entry.value("roof_to_wall_failure", false);
      const DamageState state = classify_damage(obs);
      ordered_json doc;
      doc["damage_state"] = state.index();
      doc["label"] = state.label();
      result << doc.dump() << "\n";
    } catch (const std::exception& e) {
      err << "error: record " << line_number << ": " << e.what() << "\n";
      return kExitInputError;
    }
  }
  const std::string text = result.str();
  if (out_path.empty()) {
    out << text;
  } else if (!write_file(out_path, text)) {
    err << "error: cannot write output to '" << out_path << "'\n";
    return kExitInputError;
  }
  return kExitOk;
}

struct SynthArgs {
  std::string scenario = "random";
  std::uint64_t seed = 42;
  int num_images = 40;
  std::string gt_out;
  std::string pred_out;
};

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  const auto scenario = parse_scenario(args.scenario);
  if (!scenario) {
    err << "error: unknown scenario '" << args.scenario
        << "' (expected perfect, off-by-one, collapse or random)\n";
    return kExitInputError;
  }
  SynthParams params;
  params.seed = args.seed;
  params.num_images = args.num_images;

  SynthFixture fixture;
  try {
    fixture = synth_fixture(*scenario, params);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string gt_path =
      args.gt_out.empty() ? args.scenario + "_gt.json" : args.gt_out;
  const std::string pred_path =
      args.pred_out.empty() ? args.scenario + "_pred.json" : args.pred_out;
  if (!write_file(gt_path, serialize_ground_truth(fixture.dataset))) {
    err << "error: cannot write '" << gt_path << "'\n";
    return kExitInputError;
  }
  if (!write_file(pred_path, serialize_predictions(fixture.predictions))) {
    err << "error: cannot write '" << pred_path << "'\n";
    return kExitInputError;
  }
  out << "wrote " << gt_path << " (" << fixture.dataset.ground_truth.size()
      << " instances) and " << pred_path << " ("
      << fixture.predictions.detections.size() << " detections)\n";
  return kExitOk;
}

void quantile_summary(detail::JsonWriter& w, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean = n > 0 ? mean / static_cast<double>(n) : 0.0;
  const double median =
      n == 0 ? 0.0
             : (n % 2 == 1 ? values[n / 2]
                           : 0.5 * (values[n / 2 - 1] + values[n / 2]));
  w.begin_object();
  w.key("min");
  w.value(n > 0 ? values.front() : 0.0);
  w.key("median");
  w.value(median);
  w.key("mean");
  w.value(mean);
  w.key("max");
  w.value(n > 0 ? values.back() : 0.0);
  w.end_object();
}

int cmd_stats(const std::string& gt_path, std::ostream& out,
              std::ostream& err) {
  const auto bytes = read_file(gt_path);
  if (!bytes) {
    err << "error: cannot read ground-truth file '" << gt_path << "'\n";
    return kExitInputError;
  }
  Dataset dataset;
  try {
    dataset = parse_ground_truth(*bytes);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const DatasetSummary summary = summarize(dataset);
  std::vector<double> widths, heights;
  widths.reserve(dataset.ground_truth.size());
  heights.reserve(dataset.ground_truth.size());
  for (const GroundTruthInstance& gt : dataset.ground_truth) {
    widths.push_back(gt.box.w);
    heights.push_back(gt.box.h);
  }

  detail::JsonWriter w;
  w.begin_object();
  w.key("images");
  w.value(summary.num_images);
  w.key("instances");
  w.value(summary.num_instances);
  w.key("per_class_instances");
  w.begin_array();
  for (std::int64_t count : summary.per_class_instances) w.value(count);
  w.end_array();
  w.key("class_names");
  w.begin_array();
  for (const std::string& name : Dataset::class_names()) w.value(name);
  w.end_array();
  w.key("box_width");
  quantile_summary(w, std::move(widths));
  w.key("box_height");
  quantile_summary(w, std::move(heights));
  w.end_object();
  out << w.str() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Ordinal-aware evaluation toolkit for building damage detection"};
  app.name("ordeval");
  app.require_subcommand(1);

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Evaluate predictions against ground truth");
  evaluate_cmd->add_option("ground_truth", evaluate_args.gt_path,
                           "Ground-truth JSON file")->required();
  evaluate_cmd->add_option("predictions", evaluate_args.pred_path,
                           "Prediction JSON file")->required();
  evaluate_cmd->add_option("--iou", evaluate_args.iou,
                           "IoU threshold for matching");
  evaluate_cmd->add_option("--ordinal-matching", evaluate_args.ordinal_matching,
                           "Matching mode for ordinal metrics")
      ->check(CLI::IsMember({"class-agnostic", "class-aware"}));
  evaluate_cmd->add_option("--f1", evaluate_args.f1_mode,
                           "F1 protocol: 'max' or 'fixed:<threshold>'");
  evaluate_cmd->add_option("--threads", evaluate_args.threads,
                           "Worker threads (0 = all cores)");
  evaluate_cmd->add_option("--out", evaluate_args.out_path,
                           "Write the report here instead of stdout");
  evaluate_cmd->add_option("--confusion-csv", evaluate_args.confusion_csv_path,
                           "Also write the confusion counts as CSV");

  TargetsArgs targets_args;
  CLI::App* targets_cmd = app.add_subcommand(
      "targets", "Print a soft ordinal target distribution");
  targets_cmd->add_option("--class", targets_args.true_class, "True class index")
      ->required()
      ->check(CLI::Range(0, kNumClasses - 1));
  targets_cmd->add_option("--psi", targets_args.psi, "Gaussian width")
      ->required();
  targets_cmd->add_option("--k", targets_args.k,
                          "Truncation radius (0-4 or 'inf')");
  targets_cmd->add_option("--scale", targets_args.scale,
                          "Task-aligned confidence s");

  LossArgs loss_args;
  CLI::App* loss_cmd = app.add_subcommand(
      "loss", "Evaluate losses and gradients over a batch file");
  loss_cmd->add_option("batch", loss_args.batch_path,
                       "Line-delimited JSON records")->required();
  loss_cmd->add_option("--psi", loss_args.psi, "Default Gaussian width");
  loss_cmd->add_option("--k", loss_args.k,
                       "Default truncation radius (0-4 or 'inf')");
  loss_cmd->add_option("--gamma", loss_args.gamma, "Default focal gamma");
  loss_cmd->add_option("--lambda", loss_args.lambda, "Default penalty lambda");
  loss_cmd->add_option("--scale", loss_args.scale, "Default target scale");
  loss_cmd->add_option("--base", loss_args.base, "Default base loss")
      ->check(CLI::IsMember({"bce", "focal"}));
  loss_cmd->add_flag("--penalty-detached", loss_args.penalty_detached,
                     "Exclude the penalty factor from the gradient");
  loss_cmd->add_flag("--fd-check", loss_args.fd_check,
                     "Verify each gradient against central finite differences");
  loss_cmd->add_option("--out", loss_args.out_path,
                       "Write records here instead of stdout");

  std::string classify_path;
  std::string classify_out;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Damage states from element observations");
  classify_cmd->add_option("observations", classify_path,
                           "Line-delimited JSON observation records")
      ->required();
  classify_cmd->add_option("--out", classify_out,
                           "Write results here instead of stdout");

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic fixture");
  synth_cmd->add_option("--scenario", synth_args.scenario,
                        "perfect, off-by-one, collapse or random")->required();
  synth_cmd->add_option("--seed", synth_args.seed, "RNG seed");
  synth_cmd->add_option("--images", synth_args.num_images, "Number of images");
  synth_cmd->add_option("--gt-out", synth_args.gt_out,
                        "Ground-truth output path");
  synth_cmd->add_option("--pred-out", synth_args.pred_out,
                        "Prediction output path");

  std::string stats_path;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Summarize a ground-truth file");
  stats_cmd->add_option("ground_truth", stats_path, "Ground-truth JSON file")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (app.got_subcommand(evaluate_cmd))
    return cmd_evaluate(evaluate_args, out, err);
  if (app.got_subcommand(targets_cmd)) return cmd_targets(targets_args, out, err);
  if (app.got_subcommand(loss_cmd)) return cmd_loss(loss_args, out, err);
  if (app.got_subcommand(classify_cmd))
    return cmd_classify(classify_path, classify_out, out, err);
  if (app.got_subcommand(synth_cmd)) return cmd_synth(synth_args, out, err);
  if (app.got_subcommand(stats_cmd)) return cmd_stats(stats_path, out, err);
  err << "error: no subcommand\n";
  return kExitInputError;
}

}  // namespace ordeval
