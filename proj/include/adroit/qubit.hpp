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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adroit {

using Complex = std::complex<double>;

/// Absolute entrywise tolerance for operator equality and validation.
inline constexpr double kOperatorTolerance = 1e-12;

/// Raised when a value violates a domain invariant (non-finite entries,
/// non-Hermitian observable, malformed schedule, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed quantity fails a numerical self-check, e.g. a
/// trace that should be real has an imaginary part beyond tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 2x2 complex matrix with finite entries. Carrier for states,
/// observables, Kraus operators and unitaries.
class QubitOperator {
 public:
  using Matrix = Eigen::Matrix2cd;

  QubitOperator() : m_(Matrix::Zero()) {}
  explicit QubitOperator(const Matrix& m);
  QubitOperator(Complex a00, Complex a01, Complex a10, Complex a11);

  static QubitOperator identity() { return QubitOperator(Matrix::Identity()); }
  static QubitOperator zero() { return QubitOperator(); }

  /// Builds (c0 I + cx X + cy Y + cz Z) / 2 from the Pauli coordinates
  /// c_k = Tr(sigma_k A).
  static QubitOperator from_pauli_coordinates(const Eigen::Vector4cd& c);

  const Matrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  Complex trace() const { return m_.trace(); }
  QubitOperator adjoint() const { return QubitOperator(Matrix(m_.adjoint())); }

  /// Coordinates c_k = Tr(sigma_k A) for k = I, X, Y, Z.
  Eigen::Vector4cd pauli_coordinates() const;

  bool is_hermitian(double tol = kOperatorTolerance) const;
  bool approx_equal(const QubitOperator& other, double tol = kOperatorTolerance) const;
  double max_abs_diff(const QubitOperator& other) const;

  friend QubitOperator operator+(const QubitOperator& a, const QubitOperator& b) {
    return QubitOperator(Matrix(a.m_ + b.m_));
  }
  friend QubitOperator operator-(const QubitOperator& a, const QubitOperator& b) {
    return QubitOperator(Matrix(a.m_ - b.m_));
  }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
    return QubitOperator(Matrix(a.m_ * b.m_));
  }
  friend QubitOperator operator*(Complex s, const QubitOperator& a) {
    return QubitOperator(Matrix(s * a.m_));
  }
  friend QubitOperator operator*(double s, const QubitOperator& a) {
    return QubitOperator(Matrix(s * a.m_));
  }

 private:
  Matrix m_;
};

/// Hermitian, unit-trace, positive semidefinite qubit state.
class DensityOperator {
 public:
  /// Throws ValidationError if `op` is not a valid state within `tol`.
  explicit DensityOperator(const QubitOperator& op, double tol = kOperatorTolerance);

  static DensityOperator maximally_mixed();
  /// (I + r.sigma) / 2; requires |r| <= 1.
  static DensityOperator from_bloch(double x, double y, double z);

  const QubitOperator& op() const { return op_; }
  Eigen::Vector3d bloch() const;
  double purity() const;

 private:
  QubitOperator op_;
};

/// Dichotomic (+1/-1 valued) observable: a Hermitian involution.
class Observable {
 public:
  /// Throws ValidationError unless op = op^dagger and op^2 = I within `tol`.
  Observable(const QubitOperator& op, std::string label, double tol = kOperatorTolerance);

  const QubitOperator& op() const { return op_; }
  const std::string& label() const { return label_; }

  /// Projector (I + outcome * Q) / 2 onto the eigenspace for `outcome` = +1 or -1.
  QubitOperator projector(int outcome) const;

  /// Real Bloch axis n with Q = n.sigma, or zero for Q = +/-I.
  Eigen::Vector3d axis() const;
  /// Tr(Q) / 2: 0 for traceless observables, +/-1 for Q = +/-I.
  double scalar_part() const;

 private:
  QubitOperator op_;
  std::string label_;
};

enum class Axis { X, Y, Z };

Observable pauli(Axis axis);

/// cos(theta) sigma_z + sin(theta) sigma_x.
Observable sigma_theta(double theta);

QubitOperator anticommutator(const QubitOperator& a, const QubitOperator& b);

/// Tr(q rho). Throws NumericalError if the trace has an imaginary part
/// beyond tolerance. The result is not clamped.
double expectation(const Observable& q, const DensityOperator& rho);

/// Real part of Tr(a b), with the same imaginary-part check as expectation().
double real_trace_product(const QubitOperator& a, const QubitOperator& b,
                          double tol = kOperatorTolerance);

}  // namespace adroit
