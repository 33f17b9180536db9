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

#include <cmath>
#include <functional>
#include <random>

#include "ordeval/ordinal_losses.hpp"
#include "ordeval/ordinal_targets.hpp"

using namespace ordeval;

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kFdTolerance = 1e-6;
constexpr double kFdFloor = 1e-9;

ClassVector one_hot(int cls) {
  ClassVector v = ClassVector::Zero();
  v[cls] = 1.0;
  return v;
}

// Central finite differences of a scalar function of the logits.
ClassVector fd_gradient(const std::function<double(const ClassVector&)>& f,
                        const ClassVector& z) {
  ClassVector grad;
  for (int j = 0; j < kNumClasses; ++j) {
    ClassVector plus = z;
    plus[j] += kFdStep;
    ClassVector minus = z;
    minus[j] -= kFdStep;
    grad[j] = (f(plus) - f(minus)) / (2.0 * kFdStep);
  }
  return grad;
}

// Componentwise relative error; the denominator floor folds the absolute
// floor in: at tolerance 1e-6 a component passes when it is within 1e-6
// relative or within kFdFloor = 1e-9 absolute.
double fd_disagreement(const ClassVector& analytic, const ClassVector& numeric) {
  double worst = 0.0;
  for (int j = 0; j < kNumClasses; ++j) {
    const double ad = std::abs(analytic[j] - numeric[j]);
    const double denom = std::max(
        {std::abs(analytic[j]), std::abs(numeric[j]), kFdFloor / kFdTolerance});
    worst = std::max(worst, ad / denom);
  }
  return worst;
}

ClassVector random_logits(std::mt19937_64& rng, double span = 2.5) {
  ClassVector z;
  for (int k = 0; k < kNumClasses; ++k)
    z[k] = span * (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0);
  return z;
}

SoftTargetDistribution random_targets(std::mt19937_64& rng) {
  const int cls = static_cast<int>(rng() % kNumClasses);
  const double psi = 0.2 + 1.8 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  const int raw_k = static_cast<int>(rng() % (kNumClasses + 1));
  const std::optional<int> k =
      raw_k == kNumClasses ? std::nullopt : std::optional<int>(raw_k);
  const double scale = 0.1 + 0.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  return soft_targets(DamageState(cls), scale, {psi, k});
}

}  // namespace

TEST_CASE("bce hand values") {
  const ClassVector zeros = ClassVector::Zero();
  const LossOutput out = bce_soft(zeros, one_hot(2));
  // Every one of the five terms is ln 2.
  CHECK(std::abs(out.value - 5.0 * std::log(2.0)) < 1e-12);
  for (int k = 0; k < kNumClasses; ++k)
    CHECK(out.gradient[k] == doctest::Approx(0.5 - (k == 2 ? 1.0 : 0.0)));
  CHECK(!out.expected_class);
}

TEST_CASE("bce is stationary when targets equal the sigmoids") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ClassVector z = random_logits(rng);
    const ClassVector targets = sigmoid(z);
    const LossOutput out = bce_soft(z, targets);
    for (int k = 0; k < kNumClasses; ++k)
      CHECK(std::abs(out.gradient[k]) < 1e-15);
  }
}

TEST_CASE("bce saturates to zero for a confident correct prediction") {
  ClassVector z = ClassVector::Constant(-40.0);
  z[3] = 40.0;
  CHECK(bce_soft(z, one_hot(3)).value < 1e-15);
}

TEST_CASE("bce with K=0 targets equals textbook one-hot bce") {
  std::mt19937_64 rng(23);
  for (int cls = 0; cls < kNumClasses; ++cls) {
    const SoftTargetDistribution dist =
        soft_targets(DamageState(cls), 1.0, {0.7, 0});
    for (int trial = 0; trial < 10; ++trial) {
      const ClassVector z = random_logits(rng);
      // softplus-form reference, written out independently
      double expected = 0.0;
      for (int k = 0; k < kNumClasses; ++k) {
        const double sp_pos = std::max(z[k], 0.0) + std::log1p(std::exp(-std::abs(z[k])));
        const double sp_neg = std::max(-z[k], 0.0) + std::log1p(std::exp(-std::abs(z[k])));
        expected += k == cls ? sp_neg : sp_pos;
      }
      CHECK(bce_soft(z, dist).value == expected);
    }
  }
}

TEST_CASE("focal hand values") {
  const ClassVector zeros = ClassVector::Zero();  // p = 0.2 everywhere
  const LossOutput out = focal_soft(zeros, one_hot(2), 1.5);
  CHECK(std::abs(out.value - 1.1516200248857608) < 1e-9);
}

TEST_CASE("focal with gamma 0 is softmax cross-entropy") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const ClassVector z = random_logits(rng);
    const SoftTargetDistribution dist = random_targets(rng);
    // reference: -sum_k y_k (z_k - logsumexp(z))
    const double m = z.maxCoeff();
    const double lse = m + std::log((z - m).exp().sum());
    double expected = 0.0;
    for (int k = 0; k < kNumClasses; ++k)
      expected -= dist.targets[k] * (z[k] - lse);
    CHECK(focal_soft(z, dist, 0.0).value ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("focal saturates to zero for a confident correct prediction") {
  ClassVector z = ClassVector::Zero();
  z[1] = 40.0;
  CHECK(focal_soft(z, one_hot(1), 1.5).value < 1e-12);
}

TEST_CASE("focal value is non-negative") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const ClassVector z = random_logits(rng, 8.0);
    const SoftTargetDistribution dist = random_targets(rng);
    const double gamma = 2.5 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    CHECK(focal_soft(z, dist, gamma).value >= 0.0);
  }
}

TEST_CASE("expected class hand values") {
  CHECK(std::abs(expected_class(ClassVector::Zero()) - 2.0) < 1e-12);

  ClassVector peaked = ClassVector::Constant(-25.0);
  peaked[3] = 25.0;
  CHECK(std::abs(expected_class(peaked) - 3.0) < 1e-9);

  // logits of a symmetric distribution about class 2
  ClassVector z;
  const double p[] = {0.1, 0.2, 0.4, 0.2, 0.1};
  for (int k = 0; k < kNumClasses; ++k) z[k] = std::log(p[k]);
  CHECK(std::abs(expected_class(z) - 2.0) < 1e-12);
}

TEST_CASE("softmax ops are shift invariant") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const ClassVector z = random_logits(rng);
    const SoftTargetDistribution dist = random_targets(rng);
    const ClassVector shifted = z + 13.75;

    CHECK(std::abs(expected_class(z) - expected_class(shifted)) < 1e-12);
    const LossOutput a = focal_soft(z, dist, 1.5);
    const LossOutput b = focal_soft(shifted, dist, 1.5);
    CHECK(std::abs(a.value - b.value) < 1e-12);
    for (int k = 0; k < kNumClasses; ++k)
      CHECK(std::abs(a.gradient[k] - b.gradient[k]) < 1e-12);
  }
}

TEST_CASE("penalty factor") {
  CHECK(ordinal_penalty_factor(0.1, 0.5, DamageState(3)) == 1.25);
  CHECK(ordinal_penalty_factor(0.0, 3.7, DamageState(0)) == 1.0);
  CHECK(ordinal_penalty_factor(0.2, 2.0, DamageState(2)) == 1.0);
  CHECK_THROWS_AS(ordinal_penalty_factor(-0.1, 1.0, DamageState(0)),
                  std::invalid_argument);
}

TEST_CASE("disabled penalty reproduces the base loss exactly") {
  std::mt19937_64 rng(41);
  for (const BaseLoss base : {BaseLoss::kBce, BaseLoss::kFocal}) {
    const ClassVector z = random_logits(rng);
    const SoftTargetDistribution dist = random_targets(rng);
    LossConfig config;
    config.lambda = 0.0;
    const LossOutput penalized = penalized_loss(z, dist, config, base);
    const LossOutput plain = base == BaseLoss::kBce
                                 ? bce_soft(z, dist)
                                 : focal_soft(z, dist, config.gamma);
    CHECK(penalized.value == plain.value);
    for (int k = 0; k < kNumClasses; ++k)
      CHECK(penalized.gradient[k] == plain.gradient[k]);
    REQUIRE(penalized.expected_class);  // still reported with factor 1
  }
}

TEST_CASE("penalized loss dominates the base loss") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const ClassVector z = random_logits(rng);
    const SoftTargetDistribution dist = random_targets(rng);
    LossConfig config;
    config.lambda = 0.4 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    config.penalty_detached = (trial % 2) == 1;
    const BaseLoss base = (trial % 4) < 2 ? BaseLoss::kBce : BaseLoss::kFocal;
    const double plain = base == BaseLoss::kBce
                             ? bce_soft(z, dist).value
                             : focal_soft(z, dist, config.gamma).value;
    const LossOutput penalized = penalized_loss(z, dist, config, base);
    CHECK(penalized.value >= plain);
    const double distance =
        std::abs(*penalized.expected_class - dist.true_class.index());
    if (config.lambda > 0.0 && distance > 0.0)
      CHECK(penalized.value > plain);
  }
}

TEST_CASE("penalty factor through the value path") {
  // softmax probabilities [0.55, 0.4, 0.05, ~, ~] give c_hat = 0.5 exactly
  // up to rounding; with true class 3 and lambda 0.1 the factor is 1.25.
  ClassVector z;
  const double p[] = {0.55, 0.4, 0.05, 1e-9, 1e-9};
  for (int k = 0; k < kNumClasses; ++k) z[k] = std::log(p[k]);
  LossConfig config;
  config.lambda = 0.1;
  const LossOutput penalized =
      penalized_loss(z, one_hot(3), DamageState(3), config, BaseLoss::kBce);
  const LossOutput plain = bce_soft(z, one_hot(3));
  CHECK(penalized.value / plain.value == doctest::Approx(1.25).epsilon(1e-9));
}

TEST_CASE("analytic gradients match central finite differences") {
  std::mt19937_64 rng(20240229);
  constexpr int kTrials = 100;

  SUBCASE("bce_soft") {
    double worst = 0.0;
    for (int trial = 0; trial < kTrials; ++trial) {
      const ClassVector z = random_logits(rng);
      const SoftTargetDistribution dist = random_targets(rng);
      const LossOutput out = bce_soft(z, dist);
      const ClassVector fd = fd_gradient(
          [&](const ClassVector& v) { return bce_soft(v, dist).value; }, z);
      worst = std::max(worst, fd_disagreement(out.gradient, fd));
    }
    CHECK(worst < kFdTolerance);
  }

  SUBCASE("focal_soft") {
    double worst = 0.0;
    for (int trial = 0; trial < kTrials; ++trial) {
      const ClassVector z = random_logits(rng);
      const SoftTargetDistribution dist = random_targets(rng);
      const double gamma =
          trial % 5 == 0 ? 0.0
                         : 2.5 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
      const LossOutput out = focal_soft(z, dist, gamma);
      const ClassVector fd = fd_gradient(
          [&](const ClassVector& v) { return focal_soft(v, dist, gamma).value; },
          z);
      worst = std::max(worst, fd_disagreement(out.gradient, fd));
    }
    CHECK(worst < kFdTolerance);
  }

  SUBCASE("penalized_loss, differentiated factor") {
    double worst = 0.0;
    for (int trial = 0; trial < kTrials; ++trial) {
      const ClassVector z = random_logits(rng);
      const SoftTargetDistribution dist = random_targets(rng);
      LossConfig config;
      config.gamma = 1.5;
      config.lambda =
          0.05 + 0.25 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
      const BaseLoss base = trial % 2 ? BaseLoss::kFocal : BaseLoss::kBce;
      const LossOutput out = penalized_loss(z, dist, config, base);
      const ClassVector fd = fd_gradient(
          [&](const ClassVector& v) {
            return penalized_loss(v, dist, config, base).value;
          },
          z);
      worst = std::max(worst, fd_disagreement(out.gradient, fd));
    }
    CHECK(worst < kFdTolerance);
  }

  SUBCASE("penalized_loss, detached factor") {
    double worst = 0.0;
    for (int trial = 0; trial < kTrials; ++trial) {
      const ClassVector z = random_logits(rng);
      const SoftTargetDistribution dist = random_targets(rng);
      LossConfig config;
      config.gamma = 1.5;
      config.lambda =
          0.05 + 0.25 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
      config.penalty_detached = true;
      const BaseLoss base = trial % 2 ? BaseLoss::kFocal : BaseLoss::kBce;
      const LossOutput out = penalized_loss(z, dist, config, base);
      // The detached convention freezes the factor at the evaluation
      // point, so the reference differentiates factor * base(z) with the
      // factor held constant.
      const double factor = ordinal_penalty_factor(
          config.lambda, *out.expected_class, dist.true_class);
      const ClassVector fd = fd_gradient(
          [&](const ClassVector& v) {
            const double base_value =
                base == BaseLoss::kBce ? bce_soft(v, dist).value
                                       : focal_soft(v, dist, config.gamma).value;
            return factor * base_value;
          },
          z);
      worst = std::max(worst, fd_disagreement(out.gradient, fd));
    }
    CHECK(worst < kFdTolerance);
  }
}

TEST_CASE("input validation") {
  ClassVector bad = ClassVector::Zero();
  bad[1] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bce_soft(bad, one_hot(0)), std::invalid_argument);
  CHECK_THROWS_AS(focal_soft(bad, one_hot(0), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(expected_class(bad), std::invalid_argument);

  ClassVector bad_targets = one_hot(0);
  bad_targets[2] = 1.5;
  CHECK_THROWS_AS(bce_soft(ClassVector::Zero(), bad_targets),
                  std::invalid_argument);
  bad_targets[2] = -0.5;
  CHECK_THROWS_AS(focal_soft(ClassVector::Zero(), bad_targets, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(focal_soft(ClassVector::Zero(), one_hot(0), -1.0),
                  std::invalid_argument);
  LossConfig config;
  config.lambda = -0.2;
  CHECK_THROWS_AS(
      penalized_loss(ClassVector::Zero(), one_hot(0), DamageState(0), config,
                     BaseLoss::kBce),
      std::invalid_argument);
}
