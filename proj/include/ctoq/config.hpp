// Copyright 2026 The ctoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctoq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

/// Base class for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or subsystem lists do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (p < 1, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant (Hermiticity, positivity, completeness) is violated
/// beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Every tolerance used by the library, in one place. Functions take a
/// `const Tolerances&` defaulted to `Tolerances{}`.
struct Tolerances {
  /// Max-entry asymmetry ‖A − A†‖ tolerated before eigendecomposition.
  double hermitian = 1e-8;
  /// Smallest eigenvalue allowed for a "PSD" operator (absolute).
  double psd = 1e-9;
  /// ‖Σ K†K − I‖ and ‖Σ M_j − I‖ (max entry).
  double completeness = 1e-9;
  /// Gram-matrix deviation for orthonormal bases and unitaries.
  double orthonormal = 1e-10;
  /// Probability vectors: drift above this is an error, below it is renormalized.
  double probability = 1e-10;
  /// Distance of a vector from the range of an isometry.
  double range = 1e-9;
  /// Relative rank tolerance (multiplies λ_max). Unset means dim · ε.
  std::optional<double> rank_tol;

  /// The relative rank threshold for an operator of dimension `dim`.
  [[nodiscard]] double relative_rank_tol(std::size_t dim) const {
    return rank_tol.value_or(static_cast<double>(dim) * kMachineEps);
  }
};

}  // namespace ctoq
