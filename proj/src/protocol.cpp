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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace adroit {

namespace {

constexpr double kDistributionTolerance = 1e-10;

void check_distribution(const JointDistribution& p, const char* where) {
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << where << ": joint distribution sums to " << sum;
    throw NumericalError(msg.str());
  }
}

}  // namespace

std::string_view to_string(EventTag tag) {
  switch (tag) {
    case EventTag::Q1: return "Q1";
    case EventTag::Q2: return "Q2";
    case EventTag::Q3: return "Q3";
    case EventTag::Boxed: return "boxed";
    case EventTag::Probe: return "probe";
  }
  return "?";
}

ExperimentSchedule::ExperimentSchedule(std::vector<MeasurementEvent> events,
                                       DensityOperator initial_state, LindbladSpec dynamics)
    : events_(std::move(events)),
      initial_state_(std::move(initial_state)),
      dynamics_(std::move(dynamics)) {
  double previous = 0.0;
  int q1 = 0, q2 = 0, q3 = 0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const MeasurementEvent& e = events_[i];
    if (!std::isfinite(e.time) || e.time < 0.0) {
      throw ValidationError("ExperimentSchedule: event times must be finite and >= 0");
    }
    if (e.time < previous) {
      throw ValidationError("ExperimentSchedule: event times must be non-decreasing");
    }
    previous = e.time;
    switch (e.tag) {
      case EventTag::Q1:
        if (q2 + q3 > 0) throw ValidationError("ExperimentSchedule: Q1 must come first");
        ++q1;
        break;
      case EventTag::Q2:
        if (q1 == 0 || q3 > 0) throw ValidationError("ExperimentSchedule: Q2 must sit between Q1 and Q3");
        ++q2;
        break;
      case EventTag::Q3:
        if (q1 == 0) throw ValidationError("ExperimentSchedule: Q3 must follow Q1");
        ++q3;
        break;
      default:
        break;
    }
  }
  if (q1 != 1 || q3 != 1 || q2 > 1) {
    throw ValidationError("ExperimentSchedule: need exactly one Q1, one Q3 and at most one Q2");
  }
}

bool ExperimentSchedule::has(EventTag tag) const {
  return std::any_of(events_.begin(), events_.end(),
                     [tag](const MeasurementEvent& e) { return e.tag == tag; });
}

std::size_t ExperimentSchedule::index_of(EventTag tag) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].tag == tag) return i;
  }
  throw ValidationError("ExperimentSchedule: no event tagged " + std::string(to_string(tag)));
}

std::size_t ExperimentSchedule::boxed_count() const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [](const MeasurementEvent& e) { return e.tag == EventTag::Boxed; }));
}

EventMask ExperimentSchedule::pair_mask(std::size_t a, std::size_t b) const {
  EventMask mask(events_.size(), false);
  mask.at(a) = true;
  mask.at(b) = true;
  return mask;
}

EventMask ExperimentSchedule::mask_without(EventTag tag) const {
  EventMask mask(events_.size(), true);
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].tag == tag) mask[i] = false;
  }
  return mask;
}

double qnd_interval(double omega, int m) {
  if (!(omega > 0.0) || m < 1) throw ValidationError("qnd_interval: need omega > 0 and m >= 1");
  return std::numbers::pi * m / omega;
}

ExperimentSchedule build_protocol_schedule(double theta, int n, double tau,
                                           const LindbladSpec& dynamics,
                                           const DensityOperator& initial_state) {
  if (n < 0) throw ValidationError("build_protocol_schedule: n must be >= 0");
  if (!std::isfinite(tau) || tau <= 0.0) {
    throw ValidationError("build_protocol_schedule: tau must be > 0");
  }
  const Observable s_theta = sigma_theta(theta);
  const Observable s_z = pauli(Axis::Z);

  std::vector<MeasurementEvent> events;
  events.reserve(static_cast<std::size_t>(2 * n + 4));
  int slot = 1;
  events.push_back({s_theta, tau * slot++, EventTag::Q1});
  for (int k = 0; k < 2 * n + 1; ++k) {
    events.push_back({k % 2 == 0 ? s_z : s_theta, tau * slot++, EventTag::Boxed});
  }
  events.push_back({s_theta, tau * slot++, EventTag::Q2});
  events.push_back({s_z, tau * slot++, EventTag::Q3});
  return ExperimentSchedule(std::move(events), initial_state, dynamics);
}

ScheduleEvaluator::ScheduleEvaluator(const ExperimentSchedule& schedule)
    : schedule_(schedule),
      propagators_(schedule.dynamics()),
      measurements_(schedule.events().size()) {}

const Channel& ScheduleEvaluator::measurement(std::size_t index) {
  auto& slot = measurements_.at(index);
  if (slot) return *slot;
  // Protocol schedules alternate between two observables; reuse their channels.
  const QubitOperator& op = schedule_.events()[index].observable.op();
  for (std::size_t j = 0; j < measurements_.size(); ++j) {
    if (measurements_[j] && schedule_.events()[j].observable.op().matrix() == op.matrix()) {
      slot = measurements_[j];
      return *slot;
    }
  }
  slot = measure_channel(schedule_.events()[index].observable);
  return *slot;
}

double ScheduleEvaluator::time_of(std::size_t index) const {
  return index == npos ? 0.0 : schedule_.events().at(index).time;
}

Channel ScheduleEvaluator::segment(const EventMask& mask, std::size_t begin, std::size_t to) {
  if (mask.size() != schedule_.events().size()) {
    throw ValidationError("ScheduleEvaluator: mask size does not match schedule");
  }
  if (to >= mask.size() || (begin != npos && begin >= to)) {
    throw ValidationError("ScheduleEvaluator: bad segment bounds");
  }
  Channel out = Channel::identity();
  double now = time_of(begin);
  const std::size_t first = begin == npos ? 0 : begin + 1;
  for (std::size_t i = first; i < to; ++i) {
    if (!mask[i]) continue;
    const double t = schedule_.events()[i].time;
    if (t > now) out = compose(out, propagators_.at(t - now));
    out = compose(out, measurement(i));
    now = t;
  }
  const double end = time_of(to);
  if (end > now) out = compose(out, propagators_.at(end - now));
  return out;
}

double ScheduleEvaluator::correlator(const EventMask& mask, std::size_t a, std::size_t b) {
  if (a >= b || !mask.at(a) || !mask.at(b)) {
    throw ValidationError("correlator: events must be masked in and ordered");
  }
  const auto& events = schedule_.events();
  const QubitOperator rho_a = segment(mask, npos, a).apply(schedule_.initial_state().op());
  const QubitOperator weighted = 0.5 * anticommutator(events[a].observable.op(), rho_a);
  const QubitOperator evolved = segment(mask, a, b).apply(weighted);
  const double value = real_trace_product(events[b].observable.op(), evolved);
  if (std::abs(value) > 1.0 + kDistributionTolerance) {
    throw NumericalError("correlator: value outside [-1, 1]");
  }
  return value;
}

JointDistribution ScheduleEvaluator::joint_distribution(const EventMask& mask, std::size_t a,
                                                        std::size_t b) {
  if (a >= b || !mask.at(a) || !mask.at(b)) {
    throw ValidationError("joint_distribution: events must be masked in and ordered");
  }
  const auto& events = schedule_.events();
  const QubitOperator rho_a = segment(mask, npos, a).apply(schedule_.initial_state().op());
  const Channel between = segment(mask, a, b);
  JointDistribution p{};
  for (int oa : {1, -1}) {
    const QubitOperator pa = events[a].observable.projector(oa);
    const QubitOperator branch = between.apply(pa * rho_a * pa);
    for (int ob : {1, -1}) {
      p[joint_index(oa, ob)] = real_trace_product(events[b].observable.projector(ob), branch);
    }
  }
  check_distribution(p, "joint_distribution");
  return p;
}

CorrelatorSet ScheduleEvaluator::lg_quantity() {
  const std::size_t q1 = schedule_.index_of(EventTag::Q1);
  const std::size_t q2 = schedule_.index_of(EventTag::Q2);
  const std::size_t q3 = schedule_.index_of(EventTag::Q3);
  const EventMask full = schedule_.full_mask();
  return CorrelatorSet::from(correlator(full, q1, q2), correlator(full, q2, q3),
                             correlator(schedule_.pair_mask(q1, q3), q1, q3));
}

double correlator_exact(const ExperimentSchedule& schedule, EventTag first, EventTag second,
                        bool include_intermediate) {
  const std::size_t a = schedule.index_of(first);
  const std::size_t b = schedule.index_of(second);
  const EventMask mask = include_intermediate ? schedule.full_mask() : schedule.pair_mask(a, b);
  return ScheduleEvaluator(schedule).correlator(mask, a, b);
}

CorrelatorSet lg_quantity(const ExperimentSchedule& schedule) {
  return ScheduleEvaluator(schedule).lg_quantity();
}

std::vector<AdroitnessExperiment> adroitness_experiments(double theta, double tau,
                                                         const LindbladSpec& dynamics) {
  if (!std::isfinite(tau) || tau <= 0.0) {
    throw ValidationError("adroitness_experiments: tau must be > 0");
  }
  const Observable s_theta = sigma_theta(theta);
  const Observable s_z = pauli(Axis::Z);
  const DensityOperator rho = DensityOperator::maximally_mixed();

  auto make = [&](char id, const Observable& first, const Observable& probe,
                  const Observable& third) {
    std::vector<MeasurementEvent> events = {{first, tau, EventTag::Q1},
                                            {probe, 2.0 * tau, EventTag::Probe},
                                            {third, 3.0 * tau, EventTag::Q3}};
    return AdroitnessExperiment{id, ExperimentSchedule(std::move(events), rho, dynamics)};
  };

  std::vector<AdroitnessExperiment> out;
  out.reserve(4);
  out.push_back(make('a', s_theta, s_theta, s_z));
  out.push_back(make('b', s_theta, s_z, s_z));
  out.push_back(make('c', s_z, s_z, s_theta));
  out.push_back(make('d', s_z, s_theta, s_theta));
  return out;
}

double epsilon_adroitness(const ExperimentSchedule& schedule) {
  const auto& events = schedule.events();
  if (events.size() != 3 || events[1].tag != EventTag::Probe) {
    throw ValidationError("epsilon_adroitness: need three events with the middle one a probe");
  }
  ScheduleEvaluator eval(schedule);
  const JointDistribution with = eval.joint_distribution(schedule.full_mask(), 0, 2);
  const JointDistribution without =
      eval.joint_distribution(schedule.mask_without(EventTag::Probe), 0, 2);
  double eps = 0.0;
  for (std::size_t k = 0; k < with.size(); ++k) eps += std::abs(with[k] - without[k]);
  return eps;
}

AdroitnessReport adroitness_report(double theta, double tau, const LindbladSpec& dynamics) {
  AdroitnessReport report;
  for (const AdroitnessExperiment& e : adroitness_experiments(theta, tau, dynamics)) {
    const double eps = epsilon_adroitness(e.schedule);
    report.per_experiment.emplace_back(e.id, eps);
    report.epsilon_total += eps;
  }
  return report;
}

double epsilon_total(double theta, double tau, const LindbladSpec& dynamics) {
  return adroitness_report(theta, tau, dynamics).epsilon_total;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::ViolatesStrict: return "violates_strict";
    case Verdict::ViolatesLenient: return "violates_lenient";
    case Verdict::NoViolation: return "no_violation";
  }
  return "?";
}

std::string_view to_string(Criterion c) {
  return c == Criterion::Strict ? "strict" : "lenient";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::ViolatesStrict, Verdict::ViolatesLenient, Verdict::NoViolation}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<Criterion> parse_criterion(std::string_view s) {
  if (s == "strict") return Criterion::Strict;
  if (s == "lenient") return Criterion::Lenient;
  return std::nullopt;
}

Verdict violation_verdict(const CorrelatorSet& cs, double eps_total) {
  if (cs.lg_quantity < -eps_total) return Verdict::ViolatesStrict;
  if (cs.lg_quantity < 0.0) return Verdict::ViolatesLenient;
  return Verdict::NoViolation;
}

bool is_violation(Verdict v, Criterion criterion) {
  if (v == Verdict::ViolatesStrict) return true;
  return v == Verdict::ViolatesLenient && criterion == Criterion::Lenient;
}

ExperimentSchedule classic_schedule(double omega) {
  const HamiltonianSpec h(omega, /*half=*/true);
  const Observable s_z = pauli(Axis::Z);
  const double pi = std::numbers::pi;
  std::vector<MeasurementEvent> events = {{s_z, 0.0, EventTag::Q1},
                                          {s_z, 3.0 * pi / (4.0 * omega), EventTag::Q2},
                                          {s_z, 3.0 * pi / (2.0 * omega), EventTag::Q3}};
  return ExperimentSchedule(std::move(events), DensityOperator::maximally_mixed(),
                            LindbladSpec(h, 0.0));
}

CorrelatorSet classic_lg(double omega) { return lg_quantity(classic_schedule(omega)); }

}  // namespace adroit
