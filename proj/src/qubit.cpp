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

#include "adroit/qubit.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace adroit {

namespace {

const Eigen::Matrix2cd& pauli_matrix(int k) {
  static const std::array<Eigen::Matrix2cd, 4> paulis = [] {
    std::array<Eigen::Matrix2cd, 4> p;
    const Complex i(0.0, 1.0);
    p[0] << 1.0, 0.0, 0.0, 1.0;
    p[1] << 0.0, 1.0, 1.0, 0.0;
    p[2] << 0.0, -i, i, 0.0;
    p[3] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return paulis[static_cast<std::size_t>(k)];
}

}  // namespace

QubitOperator::QubitOperator(const Matrix& m) : m_(m) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (!std::isfinite(m_(r, c).real()) || !std::isfinite(m_(r, c).imag())) {
        throw ValidationError("QubitOperator: non-finite entry");
      }
    }
  }
}

QubitOperator::QubitOperator(Complex a00, Complex a01, Complex a10, Complex a11)
    : QubitOperator((Matrix() << a00, a01, a10, a11).finished()) {}

QubitOperator QubitOperator::from_pauli_coordinates(const Eigen::Vector4cd& c) {
  Matrix m = Matrix::Zero();
  for (int k = 0; k < 4; ++k) m += c(k) * pauli_matrix(k);
  return QubitOperator(Matrix(0.5 * m));
}

Eigen::Vector4cd QubitOperator::pauli_coordinates() const {
  // Tr(sigma_k A) written out for the fixed Pauli basis.
  const Complex i(0.0, 1.0);
  return Eigen::Vector4cd(m_(0, 0) + m_(1, 1), m_(0, 1) + m_(1, 0),
                          i * (m_(0, 1) - m_(1, 0)), m_(0, 0) - m_(1, 1));
}

bool QubitOperator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double QubitOperator::max_abs_diff(const QubitOperator& other) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool QubitOperator::approx_equal(const QubitOperator& other, double tol) const {
  return max_abs_diff(other) <= tol;
}

DensityOperator::DensityOperator(const QubitOperator& op, double tol) : op_(op) {
  if (!op_.is_hermitian(tol)) throw ValidationError("DensityOperator: not Hermitian");
  if (std::abs(op_.trace() - 1.0) > tol) {
    std::ostringstream msg;
    msg << "DensityOperator: trace " << op_.trace() << " != 1";
    throw ValidationError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(op_.matrix(), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tol) {
    throw ValidationError("DensityOperator: negative eigenvalue");
  }
}

DensityOperator DensityOperator::maximally_mixed() {
  return DensityOperator(0.5 * QubitOperator::identity());
}

DensityOperator DensityOperator::from_bloch(double x, double y, double z) {
  return DensityOperator(QubitOperator::from_pauli_coordinates(Eigen::Vector4cd(1.0, x, y, z)));
}

Eigen::Vector3d DensityOperator::bloch() const {
  const Eigen::Vector4cd c = op_.pauli_coordinates();
  return Eigen::Vector3d(c(1).real(), c(2).real(), c(3).real());
}

double DensityOperator::purity() const {
  return real_trace_product(op_, op_);
}

Observable::Observable(const QubitOperator& op, std::string label, double tol)
    : op_(op), label_(std::move(label)) {
  if (!op_.is_hermitian(tol)) {
    throw ValidationError("Observable '" + label_ + "': not Hermitian");
  }
  if (!(op_ * op_).approx_equal(QubitOperator::identity(), tol)) {
    throw ValidationError("Observable '" + label_ + "': not an involution");
  }
}

QubitOperator Observable::projector(int outcome) const {
  if (outcome != 1 && outcome != -1) throw ValidationError("projector: outcome must be +1 or -1");
  return 0.5 * (QubitOperator::identity() + static_cast<double>(outcome) * op_);
}

Eigen::Vector3d Observable::axis() const {
  const Eigen::Vector4cd c = op_.pauli_coordinates();
  return 0.5 * Eigen::Vector3d(c(1).real(), c(2).real(), c(3).real());
}

double Observable::scalar_part() const { return 0.5 * op_.trace().real(); }

Observable pauli(Axis axis) {
  switch (axis) {
    case Axis::X:
      return Observable(QubitOperator(pauli_matrix(1)), "sigma_x");
    case Axis::Y:
      return Observable(QubitOperator(pauli_matrix(2)), "sigma_y");
    case Axis::Z:
      return Observable(QubitOperator(pauli_matrix(3)), "sigma_z");
  }
  throw ValidationError("pauli: unknown axis");
}

Observable sigma_theta(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("sigma_theta: non-finite angle");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::ostringstream label;
  label.precision(17);
  label << "sigma_theta(" << theta << ")";
  return Observable(QubitOperator(c, s, s, -c), label.str());
}

QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b) {
  return a * b + b * a;
}

double real_trace_product(const QubitOperator& a, const QubitOperator& b, double tol) {
  const Complex tr = (a.matrix() * b.matrix()).trace();
  if (std::abs(tr.imag()) > tol) {
    std::ostringstream msg;
    msg << "trace has imaginary part " << tr.imag();
    throw NumericalError(msg.str());
  }
  return tr.real();
}

double expectation(const Observable& q, const DensityOperator& rho) {
  return real_trace_product(q.op(), rho.op());
}

}  // namespace adroit
