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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adroit/qubit.hpp"

namespace adroit {

/// Eigenvalue tolerance for the Choi positivity check and for channel
/// equality.
inline constexpr double kChannelTolerance = 1e-10;

/// A completely positive, trace-preserving map on qubit operators.
///
/// Stored as its Pauli transfer matrix R, R_ij = Tr(sigma_i E(sigma_j)) / 2,
/// which acts on the coordinates c_k = Tr(sigma_k A). Row/column 0 is the
/// trace coordinate; a trace-preserving map has first row (1, 0, 0, 0).
/// Composition is a 4x4 product. The map is extended linearly to
/// non-Hermitian operators.
class Channel {
 public:
  using TransferMatrix = Eigen::Matrix4d;

  static Channel identity();

  /// Validates trace preservation and Choi positivity; throws
  /// ValidationError on failure.
  static Channel from_transfer_matrix(const TransferMatrix& r, double tol = kChannelTolerance);

  /// rho -> sum_k K_k rho K_k^dagger. Validated as above.
  static Channel from_kraus(std::span<const QubitOperator> kraus, double tol = kChannelTolerance);

  const TransferMatrix& transfer_matrix() const { return r_; }

  QubitOperator apply(const QubitOperator& a) const;
  DensityOperator apply(const DensityOperator& rho) const;
  Eigen::Vector4d apply(const Eigen::Vector4d& coordinates) const { return r_ * coordinates; }

  /// Heisenberg-picture (adjoint) action: Tr(E*(Q) rho) = Tr(Q E(rho)).
  QubitOperator apply_heisenberg(const QubitOperator& q) const;

  /// 4x4 Choi matrix; block (i, j) is E(|i><j|).
  Eigen::Matrix4cd choi() const;
  bool is_trace_preserving(double tol = kChannelTolerance) const;
  bool is_completely_positive(double tol = kChannelTolerance) const;
  /// Kraus operators read off the Choi eigendecomposition. Eigenvalues
  /// below `tol` are dropped.
  std::vector<QubitOperator> kraus(double tol = kChannelTolerance) const;

  bool approx_equal(const Channel& other, double tol = kChannelTolerance) const;
  double max_abs_diff(const Channel& other) const;

  friend Channel compose(const Channel& first, const Channel& then);

 private:
  explicit Channel(const TransferMatrix& r) : r_(r) {}

  TransferMatrix r_;
};

/// The channel that applies `first`, then `then`.
Channel compose(const Channel& first, const Channel& then);

/// `c` applied `k` times (k >= 0).
Channel power(const Channel& c, int k);

/// rho -> (rho + sigma_z rho sigma_z) / 2.
Channel dephase_z();
/// rho -> (rho + sigma_theta rho sigma_theta) / 2.
Channel dephase_theta(double theta);
/// rho -> (rho + q rho q) / 2.
Channel dephase(const Observable& q);

/// Unconditioned Lueders update P+ rho P+ + P- rho P-, built from the
/// projectors of `q`.
Channel measure_channel(const Observable& q);

}  // namespace adroit
