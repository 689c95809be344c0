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

#include "adroit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace adroit {

namespace {

std::vector<std::size_t> included_events(const ExperimentSchedule& schedule, const EventMask& mask) {
  if (mask.size() != schedule.events().size()) {
    throw ValidationError("sampling: mask size does not match schedule");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

std::size_t column_for(const std::vector<std::size_t>& included, std::size_t event) {
  auto it = std::find(included.begin(), included.end(), event);
  if (it == included.end()) throw ValidationError("sampling: event is not masked in");
  return static_cast<std::size_t>(it - included.begin());
}

class TreeWalker {
 public:
  TreeWalker(const ExperimentSchedule& schedule, std::vector<std::size_t> included)
      : schedule_(schedule), included_(std::move(included)), propagators_(schedule.dynamics()) {}

  std::vector<OutcomeTrajectory> run() {
    std::vector<int> path;
    path.reserve(included_.size());
    walk(0, schedule_.initial_state().op(), 0.0, 1.0, path);
    return std::move(out_);
  }

 private:
  void walk(std::size_t depth, const QubitOperator& rho, double now, double probability,
            std::vector<int>& path) {
    if (depth == included_.size()) {
      out_.push_back({path, probability});
      return;
    }
    const MeasurementEvent& event = schedule_.events()[included_[depth]];
    const QubitOperator evolved =
        event.time > now ? propagators_.at(event.time - now).apply(rho) : rho;
    for (int outcome : {1, -1}) {
      const QubitOperator p = event.observable.projector(outcome);
      const QubitOperator collapsed = p * evolved * p;
      const double weight = collapsed.trace().real();
      if (weight < kPruneThreshold) continue;
      path.push_back(outcome);
      walk(depth + 1, (1.0 / weight) * collapsed, event.time, probability * weight, path);
      path.pop_back();
    }
  }

  const ExperimentSchedule& schedule_;
  std::vector<std::size_t> included_;
  PropagatorCache propagators_;
  std::vector<OutcomeTrajectory> out_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One masked-in event, flattened for the per-shot loop.
struct SampledStep {
  Eigen::Matrix4d propagate;  // from the previous event (or t = 0)
  Eigen::Vector3d axis;
  double scalar;              // +/-1 for Q = +/-I, else 0
};

JointDistribution empirical_joint(const SampleSet& s) {
  if (s.tags.size() < 2 || s.shots == 0) throw ValidationError("estimate_adroitness: empty records");
  const std::size_t first = 0;
  const std::size_t last = s.tags.size() - 1;
  JointDistribution counts{};
  for (std::size_t shot = 0; shot < s.shots; ++shot) {
    counts[joint_index(s.outcome(shot, first), s.outcome(shot, last))] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(s.shots);
  return counts;
}

}  // namespace

std::vector<OutcomeTrajectory> enumerate_outcomes(const ExperimentSchedule& schedule,
                                                  const EventMask& mask) {
  std::vector<std::size_t> included = included_events(schedule, mask);
  if (included.size() > kMaxEnumeratedEvents) {
    throw ValidationError("enumerate_outcomes: more than 20 events");
  }
  return TreeWalker(schedule, std::move(included)).run();
}

double correlator_by_enumeration(const ExperimentSchedule& schedule, const EventMask& mask,
                                 std::size_t a, std::size_t b) {
  const std::vector<std::size_t> included = included_events(schedule, mask);
  const std::size_t ca = column_for(included, a);
  const std::size_t cb = column_for(included, b);
  double sum = 0.0;
  for (const OutcomeTrajectory& t : enumerate_outcomes(schedule, mask)) {
    sum += t.probability * t.outcomes[ca] * t.outcomes[cb];
  }
  return sum;
}

JointDistribution joint_by_enumeration(const ExperimentSchedule& schedule, const EventMask& mask,
                                       std::size_t a, std::size_t b) {
  const std::vector<std::size_t> included = included_events(schedule, mask);
  const std::size_t ca = column_for(included, a);
  const std::size_t cb = column_for(included, b);
  JointDistribution p{};
  for (const OutcomeTrajectory& t : enumerate_outcomes(schedule, mask)) {
    p[joint_index(t.outcomes[ca], t.outcomes[cb])] += t.probability;
  }
  return p;
}

CorrelatorSet lg_quantity_by_enumeration(const ExperimentSchedule& schedule) {
  const std::size_t q1 = schedule.index_of(EventTag::Q1);
  const std::size_t q2 = schedule.index_of(EventTag::Q2);
  const std::size_t q3 = schedule.index_of(EventTag::Q3);
  const EventMask full = schedule.full_mask();
  return CorrelatorSet::from(correlator_by_enumeration(schedule, full, q1, q2),
                             correlator_by_enumeration(schedule, full, q2, q3),
                             correlator_by_enumeration(schedule, schedule.pair_mask(q1, q3), q1, q3));
}

double epsilon_by_enumeration(const ExperimentSchedule& schedule) {
  const std::size_t first = schedule.index_of(EventTag::Q1);
  const std::size_t third = schedule.index_of(EventTag::Q3);
  const JointDistribution with = joint_by_enumeration(schedule, schedule.full_mask(), first, third);
  const JointDistribution without =
      joint_by_enumeration(schedule, schedule.mask_without(EventTag::Probe), first, third);
  double eps = 0.0;
  for (std::size_t k = 0; k < 4; ++k) eps += std::abs(with[k] - without[k]);
  return eps;
}

std::size_t SampleSet::column_of(EventTag tag) const {
  for (std::size_t c = 0; c < tags.size(); ++c) {
    if (tags[c] == tag) return c;
  }
  throw ValidationError("SampleSet: no column tagged " + std::string(to_string(tag)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

SampleSet sample_trajectories(const ExperimentSchedule& schedule, const EventMask& mask,
                              std::size_t shots, std::uint64_t seed, unsigned workers) {
  if (shots == 0) throw ValidationError("sample_trajectories: shots must be >= 1");
  SampleSet out;
  out.seed = seed;
  out.shots = shots;
  out.event_indices = included_events(schedule, mask);
  const std::size_t k = out.event_indices.size();
  if (k == 0) throw ValidationError("sample_trajectories: no events masked in");

  PropagatorCache propagators(schedule.dynamics());
  std::vector<SampledStep> steps;
  double now = 0.0;
  for (std::size_t idx : out.event_indices) {
    const MeasurementEvent& e = schedule.events()[idx];
    out.tags.push_back(e.tag);
    const Eigen::Matrix4d r = e.time > now ? propagators.at(e.time - now).transfer_matrix()
                                           : Eigen::Matrix4d::Identity();
    steps.push_back({r, e.observable.axis(), e.observable.scalar_part()});
    now = e.time;
  }
  out.outcomes.assign(shots * k, 0);

  const Eigen::Vector4d initial = [&] {
    const Eigen::Vector4cd c = schedule.initial_state().op().pauli_coordinates();
    return Eigen::Vector4d(c.real());
  }();

  const std::size_t blocks = (shots + kShotsPerBlock - 1) / kShotsPerBlock;
  auto run_block = [&](std::size_t block) {
    std::mt19937_64 rng(derive_seed(seed, block));
    const std::size_t begin = block * kShotsPerBlock;
    const std::size_t end = std::min(shots, begin + kShotsPerBlock);
    for (std::size_t shot = begin; shot < end; ++shot) {
      Eigen::Vector4d state = initial;
      std::int8_t* row = &out.outcomes[shot * k];
      for (std::size_t j = 0; j < k; ++j) {
        const SampledStep& step = steps[j];
        state = step.propagate * state;
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (step.scalar != 0.0) {
          // Q = +/-I: the outcome is fixed and the state is untouched.
          row[j] = step.scalar > 0.0 ? 1 : -1;
          continue;
        }
        // Coordinates carry Tr(rho) = 1, so p(+) = (1 + n.r) / 2.
        const double p_plus = 0.5 * (state(0) + step.axis.dot(state.tail<3>()));
        const int outcome = u < p_plus ? 1 : -1;
        row[j] = static_cast<std::int8_t>(outcome);
        state << 1.0, outcome * step.axis;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

EstimateWithError estimate_correlator(const SampleSet& records, EventTag first, EventTag second) {
  if (records.shots == 0) throw ValidationError("estimate_correlator: empty records");
  const std::size_t a = records.column_of(first);
  const std::size_t b = records.column_of(second);
  double sum = 0.0;
  for (std::size_t s = 0; s < records.shots; ++s) sum += records.outcome(s, a) * records.outcome(s, b);
  const double n = static_cast<double>(records.shots);
  const double mean = sum / n;
  // Products are +/-1, so sum of squared deviations is n (1 - mean^2).
  double se = 0.0;
  if (records.shots > 1) {
    const double variance = std::max(0.0, n * (1.0 - mean * mean) / (n - 1.0));
    se = std::sqrt(variance / n);
  }
  return {mean, se, records.shots};
}

SampledCorrelators sample_lg_quantity(const ExperimentSchedule& schedule, std::size_t shots,
                                      std::uint64_t seed, unsigned workers) {
  const SampleSet full =
      sample_trajectories(schedule, schedule.full_mask(), shots, derive_seed(seed, 0), workers);
  const EventMask prime =
      schedule.pair_mask(schedule.index_of(EventTag::Q1), schedule.index_of(EventTag::Q3));
  const SampleSet endpoints =
      sample_trajectories(schedule, prime, shots, derive_seed(seed, 1), workers);
  return {estimate_correlator(full, EventTag::Q1, EventTag::Q2),
          estimate_correlator(full, EventTag::Q2, EventTag::Q3),
          estimate_correlator(endpoints, EventTag::Q1, EventTag::Q3)};
}

AdroitnessEstimate estimate_adroitness(const SampleSet& with_probe,
                                       const SampleSet& without_probe) {
  AdroitnessEstimate est;
  est.with_probe = empirical_joint(with_probe);
  est.without_probe = empirical_joint(without_probe);
  const double n1 = static_cast<double>(with_probe.shots);
  const double n2 = static_cast<double>(without_probe.shots);
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = est.with_probe[k];
    const double q = est.without_probe[k];
    est.epsilon += std::abs(p - q);
    est.cell_standard_error[k] = std::sqrt(p * (1.0 - p) / n1 + q * (1.0 - q) / n2);
  }
  return est;
}

AdroitnessEstimate sample_adroitness(const ExperimentSchedule& schedule, std::size_t shots,
                                     std::uint64_t seed, unsigned workers) {
  const SampleSet with =
      sample_trajectories(schedule, schedule.full_mask(), shots, derive_seed(seed, 0), workers);
  const SampleSet without = sample_trajectories(schedule, schedule.mask_without(EventTag::Probe),
                                                shots, derive_seed(seed, 1), workers);
  return estimate_adroitness(with, without);
}

}  // namespace adroit
