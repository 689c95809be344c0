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

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "adroit/channel.hpp"
#include "adroit/dynamics.hpp"
#include "adroit/qubit.hpp"

namespace adroit {

enum class EventTag { Q1, Q2, Q3, Boxed, Probe };

std::string_view to_string(EventTag tag);

struct MeasurementEvent {
  Observable observable;
  double time;
  EventTag tag;
};

/// Which events of a schedule are actually performed in a run.
using EventMask = std::vector<bool>;

/// Timed projective measurements on a qubit evolving under `dynamics`,
/// starting from `initial_state` at time 0.
///
/// Invariants (checked on construction): exactly one Q1 and one Q3, at most
/// one Q2, Q1 before Q2 before Q3, times finite, >= 0 and non-decreasing.
/// Equal times are allowed and mean back-to-back measurements.
class ExperimentSchedule {
 public:
  ExperimentSchedule(std::vector<MeasurementEvent> events, DensityOperator initial_state,
                     LindbladSpec dynamics);

  const std::vector<MeasurementEvent>& events() const { return events_; }
  const DensityOperator& initial_state() const { return initial_state_; }
  const LindbladSpec& dynamics() const { return dynamics_; }

  bool has(EventTag tag) const;
  /// Index of the first event with `tag`; throws ValidationError if absent.
  std::size_t index_of(EventTag tag) const;
  std::size_t boxed_count() const;

  /// True for the single-boxed-measurement sequence (sigma_theta, sigma_z,
  /// sigma_theta, sigma_z), which never violates the inequality. The
  /// builder still constructs it for negative testing.
  bool is_reduced_box() const { return boxed_count() == 1; }

  EventMask full_mask() const { return EventMask(events_.size(), true); }
  /// Only the two events at `a` and `b`.
  EventMask pair_mask(std::size_t a, std::size_t b) const;
  /// Every event except those tagged `tag`.
  EventMask mask_without(EventTag tag) const;

 private:
  std::vector<MeasurementEvent> events_;
  DensityOperator initial_state_;
  LindbladSpec dynamics_;
};

/// pi m / omega: the interval at which H = omega sigma_x returns sigma_z to
/// itself.
double qnd_interval(double omega, int m);

/// Q1 = sigma_theta; then 2n+1 boxed measurements alternating sigma_z,
/// sigma_theta, ..., sigma_z; then Q2 = sigma_theta; then Q3 = sigma_z.
/// Events sit at tau, 2 tau, ... so the state evolves for one interval
/// before Q1. n = 0 yields the reduced single-box sequence.
ExperimentSchedule build_protocol_schedule(double theta, int n, double tau,
                                           const LindbladSpec& dynamics,
                                           const DensityOperator& initial_state =
                                               DensityOperator::maximally_mixed());

struct CorrelatorSet {
  double c12 = 0.0;
  double c23 = 0.0;
  double c13_prime = 0.0;
  double lg_quantity = 1.0;

  static CorrelatorSet from(double c12, double c23, double c13_prime) {
    return {c12, c23, c13_prime, 1.0 + c12 + c23 + c13_prime};
  }
};

/// Probabilities P(a, c) of the outcomes of two events, ordered
/// (+,+), (+,-), (-,+), (-,-).
using JointDistribution = std::array<double, 4>;

inline constexpr std::size_t joint_index(int a, int c) {
  return (a > 0 ? 0u : 2u) + (c > 0 ? 0u : 1u);
}

/// Evaluates a schedule by composing channels. Holds a propagator cache
/// and the measurement channel of every event, so repeated queries on the
/// same schedule are cheap. Not thread-safe.
class ScheduleEvaluator {
 public:
  explicit ScheduleEvaluator(const ExperimentSchedule& schedule);

  const ExperimentSchedule& schedule() const { return schedule_; }

  /// Unconditioned evolution from time `from` to the time of event `to`,
  /// applying the measurement channel of every masked-in event with index
  /// in (begin, to). Pass begin = npos to start at time 0 before any event.
  Channel segment(const EventMask& mask, std::size_t begin, std::size_t to);

  /// <Q_a Q_b> = Tr[Q_b E({Q_a, rho_a}) / 2] with rho_a the state just
  /// before event a and E the evolution from a to b.
  double correlator(const EventMask& mask, std::size_t a, std::size_t b);

  /// Joint outcome distribution of events a and b under `mask`.
  JointDistribution joint_distribution(const EventMask& mask, std::size_t a, std::size_t b);

  CorrelatorSet lg_quantity();

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  const Channel& measurement(std::size_t index);
  double time_of(std::size_t index) const;

  const ExperimentSchedule& schedule_;
  PropagatorCache propagators_;
  std::vector<std::optional<Channel>> measurements_;
};

/// Correlator of the events tagged `first` and `second`. With
/// `include_intermediate` false, every other event is left out of the run.
double correlator_exact(const ExperimentSchedule& schedule, EventTag first, EventTag second,
                        bool include_intermediate);

/// c12 and c23 with every event performed; c13_prime with only Q1 and Q3.
CorrelatorSet lg_quantity(const ExperimentSchedule& schedule);

struct AdroitnessExperiment {
  char id;
  ExperimentSchedule schedule;
};

/// The adroitness battery: three measurements at tau, 2 tau, 3 tau (Q1,
/// probe, Q3) in which the probe repeats an adjacent measurement.
///   (a) sigma_theta, sigma_theta, sigma_z
///   (b) sigma_theta, sigma_z,     sigma_z
///   (c) sigma_z,     sigma_z,     sigma_theta
///   (d) sigma_z,     sigma_theta, sigma_theta
std::vector<AdroitnessExperiment> adroitness_experiments(double theta, double tau,
                                                         const LindbladSpec& dynamics);

/// Sum over (a, c) of |P(a, c | probe performed) - P(a, c | probe omitted)|.
/// Requires three events with the middle one tagged Probe.
double epsilon_adroitness(const ExperimentSchedule& schedule);

struct AdroitnessReport {
  std::vector<std::pair<char, double>> per_experiment;
  double epsilon_total = 0.0;
};

AdroitnessReport adroitness_report(double theta, double tau, const LindbladSpec& dynamics);

double epsilon_total(double theta, double tau, const LindbladSpec& dynamics);

enum class Verdict { ViolatesStrict, ViolatesLenient, NoViolation };
enum class Criterion { Strict, Lenient };

std::string_view to_string(Verdict v);
std::string_view to_string(Criterion c);
std::optional<Verdict> parse_verdict(std::string_view s);
std::optional<Criterion> parse_criterion(std::string_view s);

/// ViolatesStrict iff L < -eps_total; ViolatesLenient iff -eps_total <= L < 0.
Verdict violation_verdict(const CorrelatorSet& cs, double eps_total);

/// Whether `v` counts as a violation under `criterion`.
bool is_violation(Verdict v, Criterion criterion);

/// Standard three-time test: H = omega sigma_x / 2, Q = sigma_z at
/// t = 0, 3 pi / (4 omega), 3 pi / (2 omega), maximally mixed start.
ExperimentSchedule classic_schedule(double omega);
CorrelatorSet classic_lg(double omega);

}  // namespace adroit
