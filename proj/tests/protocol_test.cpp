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


#include "adroit/protocol.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace adroit {
namespace {

constexpr double kPi = std::numbers::pi;

CorrelatorSet protocol_lg(double theta, int n, double gamma = 0.0, double omega = 1.0,
                          int m = 1) {
  const LindbladSpec spec(HamiltonianSpec(omega), gamma);
  return lg_quantity(build_protocol_schedule(theta, n, qnd_interval(omega, m), spec));
}

TEST(Schedule, ProtocolStructure) {
  const ExperimentSchedule s1 = build_protocol_schedule(1.0, 1, kPi, LindbladSpec::noiseless());
  ASSERT_EQ(s1.events().size(), 6u);
  EXPECT_EQ(s1.boxed_count(), 3u);
  EXPECT_EQ(s1.index_of(EventTag::Q1), 0u);
  EXPECT_EQ(s1.index_of(EventTag::Q2), 4u);
  EXPECT_EQ(s1.index_of(EventTag::Q3), 5u);
  for (std::size_t i = 0; i < s1.events().size(); ++i) {
    EXPECT_DOUBLE_EQ(s1.events()[i].time, kPi * static_cast<double>(i + 1));
  }
  EXPECT_TRUE(s1.events()[1].observable.op().approx_equal(pauli(Axis::Z).op()));
  EXPECT_TRUE(s1.events()[2].observable.op().approx_equal(sigma_theta(1.0).op()));
  EXPECT_TRUE(s1.events()[3].observable.op().approx_equal(pauli(Axis::Z).op()));

  const ExperimentSchedule s2 = build_protocol_schedule(1.0, 2, kPi, LindbladSpec::noiseless());
  EXPECT_EQ(s2.events().size(), 8u);
  EXPECT_EQ(s2.boxed_count(), 5u);
  EXPECT_FALSE(s2.is_reduced_box());
  EXPECT_TRUE(build_protocol_schedule(1.0, 0, kPi, LindbladSpec::noiseless()).is_reduced_box());
}

TEST(Schedule, Masks) {
  const ExperimentSchedule s = build_protocol_schedule(1.0, 1, kPi, LindbladSpec::noiseless());
  EXPECT_EQ(s.pair_mask(0, 5), (EventMask{true, false, false, false, false, true}));
  EXPECT_EQ(s.mask_without(EventTag::Boxed), (EventMask{true, false, false, false, true, true}));
  EXPECT_EQ(s.full_mask(), EventMask(6, true));
}

TEST(Schedule, Validation) {
  const DensityOperator rho = DensityOperator::maximally_mixed();
  const LindbladSpec spec = LindbladSpec::noiseless();
  const Observable z = pauli(Axis::Z);
  EXPECT_THROW(ExperimentSchedule({{z, 2.0, EventTag::Q1}, {z, 1.0, EventTag::Q3}}, rho, spec),
               ValidationError);
  EXPECT_THROW(ExperimentSchedule({{z, -1.0, EventTag::Q1}, {z, 1.0, EventTag::Q3}}, rho, spec),
               ValidationError);
  EXPECT_THROW(ExperimentSchedule({{z, 1.0, EventTag::Q3}, {z, 2.0, EventTag::Q1}}, rho, spec),
               ValidationError);
  EXPECT_THROW(ExperimentSchedule({{z, 1.0, EventTag::Q1}}, rho, spec), ValidationError);
  EXPECT_NO_THROW(ExperimentSchedule({{z, 1.0, EventTag::Q1}, {z, 1.0, EventTag::Q3}}, rho, spec));
  EXPECT_THROW(build_protocol_schedule(1.0, -1, kPi, spec), ValidationError);
  EXPECT_THROW(build_protocol_schedule(1.0, 1, 0.0, spec), ValidationError);
}

TEST(LgQuantity, ClosedFormAllN) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int n = 1; n <= 10; ++n) {
    for (int i = 0; i < 20; ++i) {
      const double theta = u(rng);
      const CorrelatorSet cs = protocol_lg(theta, n);
      const double c = std::cos(theta);
      EXPECT_NEAR(cs.c12, std::pow(c, 2 * (n + 1)), 1e-12);
      EXPECT_NEAR(cs.c23, c, 1e-12);
      EXPECT_NEAR(cs.c13_prime, c, 1e-12);
      EXPECT_NEAR(cs.lg_quantity, oracle::lg_closed_form(theta, n), 1e-10);
    }
  }
}

TEST(LgQuantity, RegressionValue) {
  EXPECT_NEAR(protocol_lg(0.7 * kPi, 1).lg_quantity, -0.056206126069288, 1e-12);
  EXPECT_NEAR(protocol_lg(kPi, 1).lg_quantity, 0.0, 1e-12);
}

TEST(LgQuantity, IdenticalForEveryQndMultiple) {
  for (int m = 1; m <= 3; ++m) {
    for (double omega : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(protocol_lg(0.8 * kPi, 2, 0.0, omega, m).lg_quantity,
                  oracle::lg_closed_form(0.8 * kPi, 2), 1e-10);
    }
  }
}

TEST(LgQuantity, ReducedBoxNeverViolates) {
  for (int i = 0; i <= 400; ++i) {
    const double theta = kPi * i / 400.0;
    const double c = std::cos(theta);
    const double lg = protocol_lg(theta, 0).lg_quantity;
    EXPECT_GE(lg, -1e-12);
    EXPECT_NEAR(lg, (1 + c) * (1 + c), 1e-10);
  }
}

TEST(LgQuantity, DecreasesWithN) {
  const double theta = 0.75 * kPi;
  double previous = protocol_lg(theta, 1).lg_quantity;
  for (int n = 2; n <= 6; ++n) {
    const double lg = protocol_lg(theta, n).lg_quantity;
    EXPECT_LE(lg, previous + 1e-15);
    previous = lg;
  }
}

TEST(LgQuantity, MatchesDensityMatrixOracleWithNoise) {
  struct Case {
    double theta;
    int n;
    double tau;
    double gamma;
  };
  for (const Case& c : {Case{0.7 * kPi, 1, kPi, 0.0}, Case{0.75 * kPi, 1, kPi, 0.004},
                        Case{0.6 * kPi, 2, kPi, 0.01}, Case{0.9 * kPi, 1, 1.3, 0.02}}) {
    const CorrelatorSet got =
        lg_quantity(build_protocol_schedule(c.theta, c.n, c.tau, LindbladSpec(HamiltonianSpec(1.0), c.gamma)));
    const oracle::LgValues ref = oracle::protocol_lg(c.theta, c.n, c.tau, 1.0, c.gamma);
    EXPECT_NEAR(got.c12, ref.c12, 1e-9);
    EXPECT_NEAR(got.c23, ref.c23, 1e-9);
    EXPECT_NEAR(got.c13_prime, ref.c13_prime, 1e-9);
    EXPECT_NEAR(got.lg_quantity, ref.lg, 1e-9);
  }
}

TEST(Correlator, ExactHelperAgreesWithEvaluator) {
  const ExperimentSchedule s =
      build_protocol_schedule(2.0, 1, kPi, LindbladSpec(HamiltonianSpec(1.0), 0.003));
  const CorrelatorSet cs = lg_quantity(s);
  EXPECT_DOUBLE_EQ(correlator_exact(s, EventTag::Q1, EventTag::Q2, true), cs.c12);
  EXPECT_DOUBLE_EQ(correlator_exact(s, EventTag::Q2, EventTag::Q3, true), cs.c23);
  EXPECT_DOUBLE_EQ(correlator_exact(s, EventTag::Q1, EventTag::Q3, false), cs.c13_prime);
}

TEST(Correlator, JointDistributionMarginals) {
  const ExperimentSchedule s =
      build_protocol_schedule(2.0, 1, kPi, LindbladSpec(HamiltonianSpec(1.0), 0.003));
  ScheduleEvaluator ev(s);
  const JointDistribution p = ev.joint_distribution(s.full_mask(), 0, 5);
  double sum = 0.0;
  for (double v : p) {
    EXPECT_GE(v, -1e-15);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(p[0] - p[1] - p[2] + p[3], ev.correlator(s.full_mask(), 0, 5), 1e-12);
  EXPECT_EQ(joint_index(+1, +1), 0u);
  EXPECT_EQ(joint_index(+1, -1), 1u);
  EXPECT_EQ(joint_index(-1, +1), 2u);
  EXPECT_EQ(joint_index(-1, -1), 3u);
}

TEST(Adroitness, BatteryLayout) {
  const auto exps = adroitness_experiments(1.0, kPi, LindbladSpec::noiseless());
  ASSERT_EQ(exps.size(), 4u);
  const std::string ids = {exps[0].id, exps[1].id, exps[2].id, exps[3].id};
  EXPECT_EQ(ids, "abcd");
  const QubitOperator s = sigma_theta(1.0).op(), z = pauli(Axis::Z).op();
  const QubitOperator expected[4][3] = {{s, s, z}, {s, z, z}, {z, z, s}, {z, s, s}};
  for (int e = 0; e < 4; ++e) {
    ASSERT_EQ(exps[e].schedule.events().size(), 3u);
    for (int k = 0; k < 3; ++k) {
      EXPECT_TRUE(exps[e].schedule.events()[k].observable.op().approx_equal(expected[e][k]));
      EXPECT_DOUBLE_EQ(exps[e].schedule.events()[k].time, kPi * (k + 1));
    }
    EXPECT_EQ(exps[e].schedule.events()[1].tag, EventTag::Probe);
  }
}

TEST(Adroitness, IdealIsPerfect) {
  for (int m = 1; m <= 3; ++m) {
    for (double theta : {0.3, 0.683 * kPi, 0.75 * kPi, 2.9}) {
      const AdroitnessReport r = adroitness_report(theta, qnd_interval(1.0, m), LindbladSpec::noiseless());
      for (const auto& [id, eps] : r.per_experiment) EXPECT_NEAR(eps, 0.0, 1e-12) << id;
      EXPECT_NEAR(r.epsilon_total, 0.0, 1e-12);
    }
  }
}

TEST(Adroitness, NoisyRegressionValue) {
  const double eps = epsilon_total(0.75 * kPi, kPi, LindbladSpec(HamiltonianSpec(1.0), 0.002));
  EXPECT_NEAR(eps, 0.008610989753189524, 1e-12);
}

TEST(Adroitness, NoisyBatteryAllPositive) {
  const AdroitnessReport r =
      adroitness_report(0.75 * kPi, kPi, LindbladSpec(HamiltonianSpec(1.0), 0.004));
  for (const auto& [id, eps] : r.per_experiment) EXPECT_GT(eps, 0.0) << id;
}

TEST(Adroitness, OffQndTimes) {
  // Probe sigma_z after sigma_theta with a quarter-period gap.
  const double tau = kPi / 4;
  const LindbladSpec spec = LindbladSpec::noiseless();
  auto eps_for = [&](double theta) {
    const std::vector<MeasurementEvent> events = {{sigma_theta(theta), tau, EventTag::Q1},
                                                  {pauli(Axis::Z), 2 * tau, EventTag::Probe},
                                                  {pauli(Axis::Z), 3 * tau, EventTag::Q3}};
    return epsilon_adroitness(ExperimentSchedule(events, DensityOperator::maximally_mixed(), spec));
  };
  EXPECT_NEAR(eps_for(kPi / 4), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(eps_for(kPi / 3), 0.5, 1e-12);
  // Here sigma_theta = sigma_x commutes with the dynamics and the probe is
  // invisible to the outer pair.
  EXPECT_NEAR(eps_for(kPi / 2), 0.0, 1e-12);
}

TEST(Adroitness, MatchesDensityMatrixOracle) {
  for (double gamma : {0.0, 0.004, 0.015}) {
    for (double tau : {kPi, 2 * kPi, 1.1}) {
      const double theta = 0.8 * kPi;
      const AdroitnessReport r = adroitness_report(theta, tau, LindbladSpec(HamiltonianSpec(1.0), gamma));
      const auto battery = oracle::battery(theta);
      for (int e = 0; e < 4; ++e) {
        EXPECT_NEAR(r.per_experiment[e].second, oracle::epsilon(battery[e], tau, 1.0, gamma), 1e-9);
      }
    }
  }
}

TEST(Adroitness, RejectsNonBatterySchedule) {
  const ExperimentSchedule s = build_protocol_schedule(1.0, 1, kPi, LindbladSpec::noiseless());
  EXPECT_THROW(epsilon_adroitness(s), ValidationError);
}

TEST(Verdict, Classification) {
  EXPECT_EQ(violation_verdict(CorrelatorSet::from(-0.6, -0.6, 0.1), 0.01), Verdict::ViolatesStrict);
  EXPECT_EQ(violation_verdict(CorrelatorSet::from(-0.5, -0.5, -0.005), 0.01), Verdict::ViolatesLenient);
  EXPECT_EQ(violation_verdict(CorrelatorSet::from(-0.5, -0.5, 0.0), 0.0), Verdict::NoViolation);
  EXPECT_TRUE(is_violation(Verdict::ViolatesStrict, Criterion::Strict));
  EXPECT_TRUE(is_violation(Verdict::ViolatesStrict, Criterion::Lenient));
  EXPECT_FALSE(is_violation(Verdict::ViolatesLenient, Criterion::Strict));
  EXPECT_TRUE(is_violation(Verdict::ViolatesLenient, Criterion::Lenient));
  EXPECT_FALSE(is_violation(Verdict::NoViolation, Criterion::Lenient));
  for (Verdict v : {Verdict::ViolatesStrict, Verdict::ViolatesLenient, Verdict::NoViolation}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  }
  EXPECT_EQ(parse_criterion("strict"), Criterion::Strict);
  EXPECT_EQ(parse_criterion("lenient"), Criterion::Lenient);
  EXPECT_FALSE(parse_criterion("loose").has_value());
}

TEST(Classic, CorrelatorsAndQuantity) {
  for (double omega : {0.5, 1.0, 2.0}) {
    const CorrelatorSet cs = classic_lg(omega);
    EXPECT_NEAR(cs.c12, -std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(cs.c23, -std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(cs.c13_prime, 0.0, 1e-12);
    EXPECT_NEAR(cs.lg_quantity, 1.0 - std::sqrt(2.0), 1e-12);
  }
}

TEST(Classic, ScheduleTimes) {
  const ExperimentSchedule s = classic_schedule(2.0);
  ASSERT_EQ(s.events().size(), 3u);
  EXPECT_DOUBLE_EQ(s.events()[0].time, 0.0);
  EXPECT_DOUBLE_EQ(s.events()[1].time, 3 * kPi / 8);
  EXPECT_DOUBLE_EQ(s.events()[2].time, 3 * kPi / 4);
}

}  // namespace
}  // namespace adroit
