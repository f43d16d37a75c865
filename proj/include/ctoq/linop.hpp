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

// Dense complex linear algebra on operators tagged with subsystem dimensions.
//
// Tensor-product layout: the left factor owns the most significant index, so
// for dims [d0, d1, ..., dn] the basis index is ((i0 * d1 + i1) * d2 + i2)...

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "ctoq/config.hpp"

namespace ctoq {

inline std::size_t dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

inline std::string dims_to_string(const Dims& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ']';
  return os.str();
}

/// A dense complex matrix together with the subsystem structure of its row
/// and column spaces. States, unitaries, isometries, projections and POVM
/// elements are all Operators.
class Operator {
 public:
  Operator(Matrix data, Dims row_dims, Dims col_dims)
      : data_(std::move(data)), row_dims_(std::move(row_dims)), col_dims_(std::move(col_dims)) {
    validate();
  }

  /// Square operator on a space with subsystem dims `dims`.
  Operator(Matrix data, const Dims& dims) : Operator(std::move(data), dims, dims) {}

  static Operator identity(const Dims& dims) {
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    return {Matrix::Identity(n, n), dims};
  }

  static Operator zero(const Dims& row_dims, const Dims& col_dims) {
    return {Matrix::Zero(static_cast<Eigen::Index>(dims_product(row_dims)),
                         static_cast<Eigen::Index>(dims_product(col_dims))),
            row_dims, col_dims};
  }

  /// |v⟩⟨v| for a vector on a space with subsystem dims `dims`.
  static Operator projector(const Vector& v, const Dims& dims) {
    return {v * v.adjoint(), dims};
  }

  /// A column vector viewed as an operator from the trivial space.
  static Operator ket(const Vector& v, const Dims& dims) {
    return {Matrix(v), dims, Dims(dims.size(), 1)};
  }

  [[nodiscard]] const Matrix& matrix() const { return data_; }
  [[nodiscard]] const Dims& row_dims() const { return row_dims_; }
  [[nodiscard]] const Dims& col_dims() const { return col_dims_; }
  [[nodiscard]] Eigen::Index rows() const { return data_.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return data_.cols(); }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
  [[nodiscard]] cplx operator()(Eigen::Index r, Eigen::Index c) const { return data_(r, c); }

  /// Square with identical row and column subsystem structure.
  [[nodiscard]] bool is_endomorphism() const { return row_dims_ == col_dims_; }

  [[nodiscard]] Operator adjoint() const { return {data_.adjoint(), col_dims_, row_dims_}; }
  [[nodiscard]] cplx trace() const { return data_.trace(); }

  /// Same matrix with the subsystem structure replaced (products must match).
  [[nodiscard]] Operator with_dims(Dims row_dims, Dims col_dims) const {
    return {data_, std::move(row_dims), std::move(col_dims)};
  }

  friend Operator operator*(const Operator& a, const Operator& b) {
    if (a.col_dims_ != b.row_dims_)
      throw DimensionError("operator product: " + dims_to_string(a.col_dims_) + " vs " +
                           dims_to_string(b.row_dims_));
    return {a.data_ * b.data_, a.row_dims_, b.col_dims_};
  }
  friend Operator operator+(const Operator& a, const Operator& b) {
    a.require_same_shape(b, "operator sum");
    return {a.data_ + b.data_, a.row_dims_, a.col_dims_};
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    a.require_same_shape(b, "operator difference");
    return {a.data_ - b.data_, a.row_dims_, a.col_dims_};
  }
  friend Operator operator*(cplx s, const Operator& a) { return {s * a.data_, a.row_dims_, a.col_dims_}; }
  friend Operator operator*(double s, const Operator& a) { return {s * a.data_, a.row_dims_, a.col_dims_}; }

 private:
  void validate() const {
    if (row_dims_.empty() || col_dims_.empty())
      throw DimensionError("operator dims lists must be non-empty");
    for (auto d : row_dims_)
      if (d == 0) throw DimensionError("subsystem dimension must be >= 1");
    for (auto d : col_dims_)
      if (d == 0) throw DimensionError("subsystem dimension must be >= 1");
    if (dims_product(row_dims_) != static_cast<std::size_t>(data_.rows()) ||
        dims_product(col_dims_) != static_cast<std::size_t>(data_.cols()))
      throw DimensionError("dims " + dims_to_string(row_dims_) + "x" + dims_to_string(col_dims_) +
                           " do not match a " + std::to_string(data_.rows()) + "x" +
                           std::to_string(data_.cols()) + " matrix");
  }

  void require_same_shape(const Operator& other, const char* what) const {
    if (row_dims_ != other.row_dims_ || col_dims_ != other.col_dims_)
      throw DimensionError(std::string(what) + ": shape mismatch");
  }

  Matrix data_;
  Dims row_dims_;
  Dims col_dims_;
};

// ---------------------------------------------------------------------------
// Tensor products and subsystem bookkeeping
// ---------------------------------------------------------------------------

inline Matrix kron_matrix(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron_vector(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Operator kron(const Operator& a, const Operator& b) {
  Dims rows = a.row_dims();
  rows.insert(rows.end(), b.row_dims().begin(), b.row_dims().end());
  Dims cols = a.col_dims();
  cols.insert(cols.end(), b.col_dims().begin(), b.col_dims().end());
  return {kron_matrix(a.matrix(), b.matrix()), std::move(rows), std::move(cols)};
}

inline Operator kron(std::span<const Operator> factors) {
  if (factors.empty()) throw DimensionError("kron of an empty list");
  Operator out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

namespace detail {

/// For each linear index of the permuted space, the linear index in the
/// original space. New subsystem i is old subsystem perm[i].
inline std::vector<Eigen::Index> permutation_index_map(const Dims& dims,
                                                       std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> old_strides(n, 1);
  for (std::size_t i = n; i-- > 1;) old_strides[i - 1] = old_strides[i] * dims[i];
  Dims new_dims(n);
  for (std::size_t i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];

  const std::size_t total = dims_product(dims);
  std::vector<Eigen::Index> map(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::size_t old = 0;
    for (std::size_t i = 0; i < n; ++i) old += digits[i] * old_strides[perm[i]];
    map[lin] = static_cast<Eigen::Index>(old);
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < new_dims[i]) break;
      digits[i] = 0;
    }
  }
  return map;
}

inline void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw DimensionError("permutation length does not match subsystem count");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw DomainError("not a permutation of subsystem indices");
    seen[p] = true;
  }
}

}  // namespace detail

/// Reorders subsystems: subsystem i of the result is subsystem perm[i] of `a`.
/// The same permutation is applied to rows and columns.
inline Operator permute_systems(const Operator& a, std::span<const std::size_t> perm) {
  detail::check_permutation(perm, a.row_dims().size());
  detail::check_permutation(perm, a.col_dims().size());
  const auto rmap = detail::permutation_index_map(a.row_dims(), perm);
  const auto cmap = detail::permutation_index_map(a.col_dims(), perm);
  Matrix out(a.rows(), a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r) out(r, c) = a.matrix()(rmap[r], cmap[c]);
  Dims rows(perm.size()), cols(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    rows[i] = a.row_dims()[perm[i]];
    cols[i] = a.col_dims()[perm[i]];
  }
  return {std::move(out), std::move(rows), std::move(cols)};
}

inline Operator permute_systems(const Operator& a, std::initializer_list<std::size_t> perm) {
  const std::vector<std::size_t> p(perm);
  return permute_systems(a, std::span<const std::size_t>(p));
}

/// Traces out every subsystem not listed in `keep`. Kept subsystems retain
/// their original relative order.
inline Operator partial_trace(const Operator& a, std::span<const std::size_t> keep) {
  if (!a.is_endomorphism()) throw DimensionError("partial_trace needs matching row/col dims");
  const std::size_t n = a.row_dims().size();
  std::set<std::size_t> kept;
  for (auto k : keep) {
    if (k >= n) throw DomainError("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    kept.insert(k);
  }
  if (kept.empty()) {
    return {Matrix::Constant(1, 1, a.trace()), Dims{1}};
  }
  std::vector<std::size_t> perm(kept.begin(), kept.end());
  Dims keep_dims;
  for (auto k : perm) keep_dims.push_back(a.row_dims()[k]);
  for (std::size_t i = 0; i < n; ++i)
    if (!kept.count(i)) perm.push_back(i);

  const Operator p = permute_systems(a, perm);
  const auto dk = static_cast<Eigen::Index>(dims_product(keep_dims));
  const Eigen::Index dt = p.rows() / dk;
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i)
    for (Eigen::Index j = 0; j < dk; ++j) {
      cplx s{0.0, 0.0};
      for (Eigen::Index t = 0; t < dt; ++t) s += p.matrix()(i * dt + t, j * dt + t);
      out(i, j) = s;
    }
  return {std::move(out), std::move(keep_dims)};
}

inline Operator partial_trace(const Operator& a, std::initializer_list<std::size_t> keep) {
  const std::vector<std::size_t> k(keep);
  return partial_trace(a, std::span<const std::size_t>(k));
}

// ---------------------------------------------------------------------------
// Spectra and norms
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian operator. Eigenvalues ascend; the columns
/// of `eigenvectors` are the corresponding eigenvectors.
struct HermitianEig {
  RealVector eigenvalues;
  Operator eigenvectors;

  [[nodiscard]] double max_eigenvalue() const { return eigenvalues.size() ? eigenvalues.maxCoeff() : 0.0; }
  [[nodiscard]] double min_eigenvalue() const { return eigenvalues.size() ? eigenvalues.minCoeff() : 0.0; }
};

inline double hermitian_defect(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline HermitianEig eig_hermitian(const Operator& a, const Tolerances& tol = {}) {
  if (a.rows() != a.cols()) throw DimensionError("eig_hermitian: operator is not square");
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (hermitian_defect(a.matrix()) > tol.hermitian * scale)
    throw NumericalError("eig_hermitian: operator is not Hermitian within tolerance");
  const Matrix sym = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: solver did not converge");
  return {solver.eigenvalues(), Operator(solver.eigenvectors(), a.row_dims(), a.row_dims())};
}

inline RealVector singular_values(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (Σ σ_i^p)^{1/p} over singular values; p = ∞ gives the largest one.
inline double schatten_norm(const Operator& a, double p) {
  if (!(p >= 1.0)) throw DomainError("schatten_norm: p must be >= 1");
  const RealVector s = singular_values(a.matrix());
  if (s.size() == 0) return 0.0;
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 1.0) return s.sum();
  if (p == 2.0) return std::sqrt(s.squaredNorm());
  return std::pow(s.array().pow(p).sum(), 1.0 / p);
}

/// ½ Σ |λ_i(A)| for Hermitian A; the trace norm of a Hermitian operator over two.
inline double half_trace_norm_hermitian(const Operator& a, const Tolerances& tol = {}) {
  return 0.5 * eig_hermitian(a, tol).eigenvalues.cwiseAbs().sum();
}

inline void require_same_space(const Operator& a, const Operator& b, const char* what) {
  if (a.row_dims() != b.row_dims() || a.col_dims() != b.col_dims())
    throw DimensionError(std::string(what) + ": dimension mismatch " + dims_to_string(a.row_dims()) +
                         " vs " + dims_to_string(b.row_dims()));
}

inline double trace_distance(const Operator& rho, const Operator& sigma, const Tolerances& tol = {}) {
  require_same_space(rho, sigma, "trace_distance");
  return half_trace_norm_hermitian(rho - sigma, tol);
}

/// Applies f to the eigenvalues strictly above rank_tol · λ_max and maps the
/// rest to zero. Throws when an eigenvalue is below −10 · rank_tol · λ_max.
inline Operator func_on_support(const Operator& a, const std::function<double(double)>& f,
                                std::optional<double> rank_tol = std::nullopt,
                                const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(a, tol);
  const double lmax = std::max(eig.max_eigenvalue(), 0.0);
  const double rel = rank_tol.value_or(tol.relative_rank_tol(a.dim()));
  const double threshold = rel * lmax;
  if (eig.min_eigenvalue() < -10.0 * threshold)
    throw NumericalError("func_on_support: operator has a negative eigenvalue " +
                         std::to_string(eig.min_eigenvalue()));
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    const double l = eig.eigenvalues(i);
    mapped(i) = (l > threshold) ? f(l) : 0.0;
  }
  const Matrix& v = eig.eigenvectors.matrix();
  return {v * mapped.asDiagonal() * v.adjoint(), a.row_dims()};
}

/// Positive square root of a PSD operator. Eigenvalues below the relative rank
/// threshold are taken as zero, so rounding noise on the kernel does not grow
/// to its square root.
inline Operator sqrt_psd(const Operator& a, const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(a, tol);
  if (eig.min_eigenvalue() < -tol.psd)
    throw NumericalError("sqrt_psd: operator is not PSD (min eigenvalue " +
                         std::to_string(eig.min_eigenvalue()) + ")");
  const double floor = tol.relative_rank_tol(a.dim()) * std::max(eig.max_eigenvalue(), 0.0);
  const RealVector roots =
      eig.eigenvalues.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  const Matrix& v = eig.eigenvectors.matrix();
  return {v * roots.asDiagonal() * v.adjoint(), a.row_dims()};
}

/// Uhlmann fidelity ‖√ρ √σ‖₁².
inline double fidelity(const Operator& rho, const Operator& sigma, const Tolerances& tol = {}) {
  require_same_space(rho, sigma, "fidelity");
  const Operator a = sqrt_psd(rho, tol);
  const Operator b = sqrt_psd(sigma, tol);
  const double s = singular_values(a.matrix() * b.matrix()).sum();
  return s * s;
}

inline bool is_psd(const Operator& a, const Tolerances& tol = {}) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (hermitian_defect(a.matrix()) > tol.hermitian * scale) return false;
  return eig_hermitian(a, tol).min_eigenvalue() >= -tol.psd;
}

/// Largest |entry| of V†V − I.
inline double isometry_defect(const Matrix& v) {
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace ctoq
