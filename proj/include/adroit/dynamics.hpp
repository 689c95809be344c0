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

#include <deque>
#include <utility>

#include "adroit/channel.hpp"
#include "adroit/qubit.hpp"

namespace adroit {

/// H = omega sigma_x, or H = omega sigma_x / 2 when `half` is set.
class HamiltonianSpec {
 public:
  /// Throws ValidationError unless omega is finite and > 0.
  explicit HamiltonianSpec(double omega, bool half = false);

  double omega() const { return omega_; }
  bool half() const { return half_; }
  /// Coefficient h of sigma_x in H = h sigma_x.
  double sigma_x_coefficient() const { return half_ ? 0.5 * omega_ : omega_; }

 private:
  double omega_;
  bool half_;
};

/// Dephasing master equation
///   d(rho)/dt = -i [h sigma_x, rho] + 2 gamma (sigma_z rho sigma_z - rho).
class LindbladSpec {
 public:
  /// Throws ValidationError unless gamma is finite and >= 0.
  LindbladSpec(HamiltonianSpec hamiltonian, double gamma);

  /// gamma = 0 with H = omega sigma_x.
  static LindbladSpec noiseless(double omega = 1.0) { return {HamiltonianSpec(omega), 0.0}; }

  const HamiltonianSpec& hamiltonian() const { return hamiltonian_; }
  double gamma() const { return gamma_; }

 private:
  HamiltonianSpec hamiltonian_;
  double gamma_;
};

/// rho -> U_t rho U_t^dagger with U_t = exp(-i H t). Requires t >= 0.
Channel unitary_propagator(const HamiltonianSpec& h, double t);

/// Heisenberg-picture observable U_t^dagger q U_t, so that
/// Tr(q U_t rho U_t^dagger) = Tr(heisenberg_observable(h, q, t) rho).
/// For H = omega sigma_x this maps sigma_z to
/// sigma_y sin(2 omega t) + sigma_z cos(2 omega t).
Observable heisenberg_observable(const HamiltonianSpec& h, const Observable& q, double t);

/// Generator of the master equation acting on the Pauli coordinates
/// (Tr A, Tr(X A), Tr(Y A), Tr(Z A)). With h the sigma_x coefficient:
///   d/dt x = -4 gamma x
///   d/dt y = -4 gamma y - 2 h z
///   d/dt z =  2 h y
Eigen::Matrix4d liouvillian(const LindbladSpec& spec);

/// exp(t * liouvillian(spec)) as a channel. Requires t >= 0. Throws
/// NumericalError if the result fails the CPTP check.
Channel lindblad_propagator(const LindbladSpec& spec, double t);

/// Memoizes lindblad_propagator() by interval length. Schedules with
/// uniform spacing only ever request a handful of distinct intervals.
/// References stay valid for the cache's lifetime. Not thread-safe; use
/// one per evaluation.
class PropagatorCache {
 public:
  explicit PropagatorCache(LindbladSpec spec) : spec_(std::move(spec)) {}

  const LindbladSpec& spec() const { return spec_; }
  const Channel& at(double t);

 private:
  LindbladSpec spec_;
  std::deque<std::pair<double, Channel>> entries_;
};

}  // namespace adroit
