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

#include "adroit/channel.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace adroit {

namespace {

QubitOperator pauli_basis(int k) {
  Eigen::Vector4cd c = Eigen::Vector4cd::Zero();
  c(k) = 2.0;
  return QubitOperator::from_pauli_coordinates(c);
}

QubitOperator matrix_unit(int i, int j) {
  QubitOperator::Matrix m = QubitOperator::Matrix::Zero();
  m(i, j) = 1.0;
  return QubitOperator(m);
}

}  // namespace

Channel Channel::identity() { return Channel(TransferMatrix::Identity()); }

Channel Channel::from_transfer_matrix(const TransferMatrix& r, double tol) {
  if (!r.allFinite()) throw ValidationError("Channel: non-finite transfer matrix");
  Channel c(r);
  if (!c.is_trace_preserving(tol)) throw ValidationError("Channel: not trace preserving");
  if (!c.is_completely_positive(tol)) throw ValidationError("Channel: not completely positive");
  return c;
}

Channel Channel::from_kraus(std::span<const QubitOperator> kraus, double tol) {
  TransferMatrix r;
  for (int j = 0; j < 4; ++j) {
    const QubitOperator sj = pauli_basis(j);
    QubitOperator image;
    for (const QubitOperator& k : kraus) image = image + k * sj * k.adjoint();
    const Eigen::Vector4cd col = image.pauli_coordinates();
    // R_ij = Tr(sigma_i E(sigma_j)) / 2 and Hermiticity preservation makes it real.
    for (int i = 0; i < 4; ++i) r(i, j) = 0.5 * col(i).real();
  }
  return from_transfer_matrix(r, tol);
}

QubitOperator Channel::apply(const QubitOperator& a) const {
  const Eigen::Vector4cd c = a.pauli_coordinates();
  return QubitOperator::from_pauli_coordinates(r_.cast<Complex>() * c);
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
  // Validation tolerance is loosened to the channel tolerance: long chains
  // accumulate rounding beyond the entrywise operator tolerance.
  return DensityOperator(apply(rho.op()), kChannelTolerance);
}

QubitOperator Channel::apply_heisenberg(const QubitOperator& q) const {
  const Eigen::Vector4cd c = q.pauli_coordinates();
  return QubitOperator::from_pauli_coordinates(r_.transpose().cast<Complex>() * c);
}

Eigen::Matrix4cd Channel::choi() const {
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      j.block<2, 2>(2 * a, 2 * b) = apply(matrix_unit(a, b)).matrix();
    }
  }
  return j;
}

bool Channel::is_trace_preserving(double tol) const {
  return std::abs(r_(0, 0) - 1.0) <= tol && r_.row(0).tail<3>().cwiseAbs().maxCoeff() <= tol;
}

bool Channel::is_completely_positive(double tol) const {
  const Eigen::Matrix4cd j = choi();
  if ((j - j.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(j, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

std::vector<QubitOperator> Channel::kraus(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(choi());
  std::vector<QubitOperator> out;
  for (int k = 0; k < 4; ++k) {
    const double lambda = eig.eigenvalues()(k);
    if (lambda <= tol) continue;
    const Eigen::Vector4cd v = std::sqrt(lambda) * eig.eigenvectors().col(k);
    // Choi index (a, out) = 2a + out maps to K(out, a).
    out.emplace_back(v(0), v(2), v(1), v(3));
  }
  return out;
}

double Channel::max_abs_diff(const Channel& other) const {
  return (r_ - other.r_).cwiseAbs().maxCoeff();
}

bool Channel::approx_equal(const Channel& other, double tol) const {
  return max_abs_diff(other) <= tol;
}

Channel compose(const Channel& first, const Channel& then) {
  return Channel(then.r_ * first.r_);
}

Channel power(const Channel& c, int k) {
  if (k < 0) throw ValidationError("power: negative exponent");
  Channel out = Channel::identity();
  for (int i = 0; i < k; ++i) out = compose(out, c);
  return out;
}

Channel dephase(const Observable& q) {
  const std::array<QubitOperator, 2> kraus = {std::sqrt(0.5) * QubitOperator::identity(),
                                              std::sqrt(0.5) * q.op()};
  return Channel::from_kraus(kraus);
}

Channel dephase_z() { return dephase(pauli(Axis::Z)); }

Channel dephase_theta(double theta) { return dephase(sigma_theta(theta)); }

Channel measure_channel(const Observable& q) {
  const std::array<QubitOperator, 2> kraus = {q.projector(1), q.projector(-1)};
  return Channel::from_kraus(kraus);
}

}  // namespace adroit
