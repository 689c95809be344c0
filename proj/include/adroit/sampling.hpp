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

// Two oracles for the protocol quantities that do not go through channel
// composition: exhaustive enumeration of the projective outcome tree, and a
// seeded Monte Carlo sampler that collects finite statistics the way an
// experiment would.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "adroit/protocol.hpp"

namespace adroit {

inline constexpr std::size_t kMaxEnumeratedEvents = 20;
/// Branches with probability below this are dropped; they contribute
/// exactly zero to any average.
inline constexpr double kPruneThreshold = 1e-14;

struct OutcomeTrajectory {
  std::vector<int> outcomes;  // one +1/-1 per masked-in event, in schedule order
  double probability = 0.0;
};

/// All outcome branches of the masked-in events. Between events the state
/// evolves under the exact propagator; at each event it collapses with the
/// Lueders update P rho P / p. Throws ValidationError for more than
/// kMaxEnumeratedEvents events.
std::vector<OutcomeTrajectory> enumerate_outcomes(const ExperimentSchedule& schedule,
                                                  const EventMask& mask);

/// sum over trajectories of p * a * b for schedule events `a` and `b`.
double correlator_by_enumeration(const ExperimentSchedule& schedule, const EventMask& mask,
                                 std::size_t a, std::size_t b);
JointDistribution joint_by_enumeration(const ExperimentSchedule& schedule, const EventMask& mask,
                                       std::size_t a, std::size_t b);
CorrelatorSet lg_quantity_by_enumeration(const ExperimentSchedule& schedule);
double epsilon_by_enumeration(const ExperimentSchedule& schedule);

/// Sampled outcome records. Row-major: outcomes[shot * tags.size() + column].
struct SampleSet {
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  std::vector<std::size_t> event_indices;  // schedule index of each column
  std::vector<EventTag> tags;
  std::vector<std::int8_t> outcomes;

  int outcome(std::size_t shot, std::size_t column) const {
    return outcomes[shot * tags.size() + column];
  }
  /// Column of the first event tagged `tag`; throws if absent.
  std::size_t column_of(EventTag tag) const;
};

/// Shots are split into fixed blocks of kShotsPerBlock; block b draws from
/// std::mt19937_64 seeded with derive_seed(seed, b). Output is therefore
/// bit-identical for equal (schedule, mask, shots, seed) whatever the
/// worker count. workers = 0 means one per hardware thread.
inline constexpr std::size_t kShotsPerBlock = std::size_t{1} << 16;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

SampleSet sample_trajectories(const ExperimentSchedule& schedule, const EventMask& mask,
                              std::size_t shots, std::uint64_t seed, unsigned workers = 1);

struct EstimateWithError {
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
};

EstimateWithError estimate_correlator(const SampleSet& records, EventTag first, EventTag second);

struct SampledCorrelators {
  EstimateWithError c12, c23, c13_prime;
};

/// c12 and c23 from one full run seeded with derive_seed(seed, 0);
/// c13_prime from a separate Q1/Q3-only run seeded with derive_seed(seed, 1).
SampledCorrelators sample_lg_quantity(const ExperimentSchedule& schedule, std::size_t shots,
                                      std::uint64_t seed, unsigned workers = 1);

/// Plug-in estimate of the epsilon-adroitness. The absolute values make it
/// biased upward at finite shots; only the exact value should feed a
/// violation criterion.
struct AdroitnessEstimate {
  double epsilon = 0.0;
  std::array<double, 4> cell_standard_error{};
  JointDistribution with_probe{};
  JointDistribution without_probe{};
};

AdroitnessEstimate estimate_adroitness(const SampleSet& with_probe,
                                       const SampleSet& without_probe);

/// Samples both arms of an adroitness experiment (probe arm with
/// derive_seed(seed, 0), no-probe arm with derive_seed(seed, 1)).
AdroitnessEstimate sample_adroitness(const ExperimentSchedule& schedule, std::size_t shots,
                                     std::uint64_t seed, unsigned workers = 1);

}  // namespace adroit
