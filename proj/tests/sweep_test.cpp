// Copyright 2026 The adroit-lg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "adroit/sweep.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace adroit {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ParseNumber, PiSuffixes) {
  EXPECT_DOUBLE_EQ(parse_number("pi", "x"), kPi);
  EXPECT_DOUBLE_EQ(parse_number("0.75pi", "x"), 0.75 * kPi);
  EXPECT_DOUBLE_EQ(parse_number("2*pi", "x"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_number("-pi", "x"), -kPi);
  EXPECT_DOUBLE_EQ(parse_number(" 1.5 ", "x"), 1.5);
  EXPECT_DOUBLE_EQ(parse_number("1e-3", "x"), 1e-3);
  EXPECT_THROW(parse_number("", "x"), ConfigError);
  EXPECT_THROW(parse_number("abc", "x"), ConfigError);
  EXPECT_THROW(parse_number("1.5x", "x"), ConfigError);
}

TEST(ParseRange, Forms) {
  const Range r = parse_range("0:pi:5", "theta");
  EXPECT_EQ(r.start, 0.0);
  EXPECT_EQ(r.stop, kPi);
  EXPECT_EQ(r.steps, 5u);
  const Range single = parse_range("0.75pi", "theta");
  EXPECT_EQ(single.steps, 1u);
  EXPECT_EQ(single.start, 0.75 * kPi);
  try {
    parse_range("0:1:x", "gamma");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "gamma");
  }
  EXPECT_THROW(parse_range("0:1", "gamma"), ConfigError);
}

TEST(Range, ValuesPinEndpoints) {
  const std::vector<double> v = Range{0.0, kPi, 7}.values();
  ASSERT_EQ(v.size(), 7u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), kPi);
  EXPECT_EQ((Range{0.3, 0.3, 1}.values()), std::vector<double>(1, 0.3));
  EXPECT_EQ(parse_range(Range{0.1, 2.5, 3}.to_string(), "x").values(), (Range{0.1, 2.5, 3}.values()));
}

TEST(SweepConfig, Validation) {
  SweepConfig c;
  EXPECT_NO_THROW(c.validate());
  c.theta = Range{1.0, 0.0, 3};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig{};
  c.theta.steps = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig{};
  c.omega = 0.0;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "omega");
  }
  c = SweepConfig{};
  c.m = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig{};
  c.gamma = Range{-0.1, 0.0, 2};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig{};
  c.n_values = {};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(EvaluatePoint, RecordInvariants) {
  for (double gamma : {0.0, 0.004}) {
    const SweepRecord r = evaluate_point(0.75 * kPi, gamma, 1, 1.0, 1);
    EXPECT_NEAR(r.lg_quantity, 1 + r.c12 + r.c23 + r.c13_prime, 1e-12);
    EXPECT_EQ(r.verdict, violation_verdict(CorrelatorSet::from(r.c12, r.c23, r.c13_prime), r.eps_total));
  }
  EXPECT_NEAR(evaluate_point(0.75 * kPi, 0.0, 1, 1.0, 1).lg_quantity,
              oracle::lg_closed_form(0.75 * kPi, 1), 1e-12);
}

TEST(RunSweep, GridOrderAndDeterminism) {
  SweepConfig c;
  c.theta = Range{0.5 * kPi, kPi, 5};
  c.gamma = Range{0.0, 0.01, 3};
  c.n_values = {1, 2};
  c.workers = 1;
  const std::vector<SweepRecord> serial = run_sweep(c);
  c.workers = 4;
  const std::vector<SweepRecord> parallel = run_sweep(c);
  ASSERT_EQ(serial.size(), 30u);
  EXPECT_EQ(serial, parallel);
  std::size_t i = 0;
  for (int n : {1, 2}) {
    for (double g : c.gamma.values()) {
      for (double t : c.theta.values()) {
        EXPECT_EQ(serial[i].n, n);
        EXPECT_EQ(serial[i].gamma, g);
        EXPECT_EQ(serial[i].theta, t);
        EXPECT_EQ(serial[i], evaluate_point(t, g, n, c.omega, c.m));
        ++i;
      }
    }
  }
}

TEST(ViolationWindow, OnsetForOneBox) {
  const ViolationWindow w = violation_window(1, 0.0, 1.0, 1, Criterion::Lenient);
  ASSERT_TRUE(w.found);
  EXPECT_NEAR(w.lower / kPi, 0.683, 1e-3);
  EXPECT_LE(w.lower_bracket, 1e-6 * kPi);
  EXPECT_GE(oracle::lg_closed_form(w.lower - 1e-5, 1), 0.0);
  EXPECT_LT(oracle::lg_closed_form(w.lower + 1e-5, 1), 0.0);
  // The ideal window ends exactly at pi, where the quantity touches zero.
  EXPECT_NEAR(w.upper, kPi, 1e-3);
}

TEST(ViolationWindow, LargeNApproachesTwoThirdsPi) {
  const ViolationWindow w = violation_window(50, 0.0, 1.0, 1, Criterion::Lenient);
  ASSERT_TRUE(w.found);
  EXPECT_NEAR(w.lower / kPi, 2.0 / 3.0, 1e-2);
  EXPECT_GE(w.lower / kPi, 2.0 / 3.0 - 1e-6);
}

TEST(ViolationWindow, StrictEqualsLenientWhenIdeal) {
  const ViolationWindow a = violation_window(2, 0.0, 1.0, 1, Criterion::Lenient);
  const ViolationWindow b = violation_window(2, 0.0, 1.0, 1, Criterion::Strict);
  EXPECT_NEAR(a.lower, b.lower, 1e-6);
}

TEST(ViolationWindow, ShrinksWithNoise) {
  double previous = violation_window(1, 0.0, 1.0, 1, Criterion::Lenient).width();
  for (double gamma : {0.002, 0.004, 0.006, 0.008}) {
    const double w = violation_window(1, gamma, 1.0, 1, Criterion::Lenient).width();
    EXPECT_LT(w, previous) << gamma;
    previous = w;
  }
}

TEST(GammaCutoff, OrderedAndNearPublishedValues) {
  const GammaCutoff lenient = gamma_cutoff(1, 1.0, 1, Criterion::Lenient);
  const GammaCutoff strict = gamma_cutoff(1, 1.0, 1, Criterion::Strict);
  ASSERT_TRUE(lenient.found);
  ASSERT_TRUE(strict.found);
  EXPECT_LE(strict.gamma, lenient.gamma);
  EXPECT_NEAR(lenient.gamma, 0.012, 0.006);
  EXPECT_NEAR(strict.gamma, 0.007, 0.0035);
  EXPECT_LT(minimum_margin(lenient.gamma * 0.99, 1, 1.0, 1, Criterion::Lenient).margin, 0.0);
  EXPECT_GT(minimum_margin(lenient.gamma * 1.01, 1, 1.0, 1, Criterion::Lenient).margin, 0.0);
}

TEST(Margin, Definitions) {
  const double theta = 0.8 * kPi, gamma = 0.003;
  const SweepRecord r = evaluate_point(theta, gamma, 1, 1.0, 1);
  EXPECT_DOUBLE_EQ(violation_margin(theta, gamma, 1, 1.0, 1, Criterion::Lenient), r.lg_quantity);
  EXPECT_DOUBLE_EQ(violation_margin(theta, gamma, 1, 1.0, 1, Criterion::Strict),
                   r.lg_quantity + r.eps_total);
}

}  // namespace
}  // namespace adroit
