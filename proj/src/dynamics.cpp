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

#include "adroit/dynamics.hpp"

#include <array>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace adroit {

namespace {

void require_time(double t, const char* where) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError(std::string(where) + ": time must be finite and >= 0");
  }
}

QubitOperator evolution_operator(const HamiltonianSpec& h, double t) {
  // exp(-i h X t) = cos(ht) I - i sin(ht) X
  const double phase = h.sigma_x_coefficient() * t;
  const Complex c(std::cos(phase), 0.0);
  const Complex s(0.0, -std::sin(phase));
  return QubitOperator(c, s, s, c);
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(double omega, bool half) : omega_(omega), half_(half) {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw ValidationError("HamiltonianSpec: omega must be finite and > 0");
  }
}

LindbladSpec::LindbladSpec(HamiltonianSpec hamiltonian, double gamma)
    : hamiltonian_(hamiltonian), gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw ValidationError("LindbladSpec: gamma must be finite and >= 0");
  }
}

Channel unitary_propagator(const HamiltonianSpec& h, double t) {
  require_time(t, "unitary_propagator");
  const std::array<QubitOperator, 1> kraus = {evolution_operator(h, t)};
  return Channel::from_kraus(kraus);
}

Observable heisenberg_observable(const HamiltonianSpec& h, const Observable& q, double t) {
  require_time(t, "heisenberg_observable");
  const QubitOperator u = evolution_operator(h, t);
  return Observable(u.adjoint() * q.op() * u, q.label());
}

Eigen::Matrix4d liouvillian(const LindbladSpec& spec) {
  const double h = spec.hamiltonian().sigma_x_coefficient();
  const double g = spec.gamma();
  Eigen::Matrix4d l = Eigen::Matrix4d::Zero();
  l(1, 1) = -4.0 * g;
  l(2, 2) = -4.0 * g;
  l(2, 3) = -2.0 * h;
  l(3, 2) = 2.0 * h;
  return l;
}

Channel lindblad_propagator(const LindbladSpec& spec, double t) {
  require_time(t, "lindblad_propagator");
  const Eigen::Matrix4d generator = liouvillian(spec) * t;
  const Eigen::Matrix4d r = generator.exp();
  try {
    return Channel::from_transfer_matrix(r);
  } catch (const ValidationError& e) {
    throw NumericalError(std::string("lindblad_propagator: ") + e.what());
  }
}

const Channel& PropagatorCache::at(double t) {
  for (const auto& [time, channel] : entries_) {
    if (time == t) return channel;
  }
  entries_.emplace_back(t, lindblad_propagator(spec_, t));
  return entries_.back().second;
}

}  // namespace adroit
