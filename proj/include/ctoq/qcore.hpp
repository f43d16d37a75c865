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

// Quantum objects: orthonormal bases, probability vectors, channels in Kraus
// form, POVMs, the standard entangled and correlated states, and entropies.

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctoq/linop.hpp"

namespace ctoq {

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

enum class PauliAxis { X, Z };

/// An ordered orthonormal basis {|j⟩}: the columns of a unitary.
class OrthoBasis {
 public:
  OrthoBasis(Matrix vectors, Dims dims, const Tolerances& tol = {})
      : vectors_(std::move(vectors)), dims_(std::move(dims)) {
    if (vectors_.rows() != vectors_.cols())
      throw DimensionError("OrthoBasis: need d vectors of dimension d");
    if (dims_product(dims_) != static_cast<std::size_t>(vectors_.rows()))
      throw DimensionError("OrthoBasis: dims do not match vector length");
    if (isometry_defect(vectors_) > tol.orthonormal)
      throw NumericalError("OrthoBasis: vectors are not orthonormal");
  }

  explicit OrthoBasis(Matrix vectors, const Tolerances& tol = {})
      : OrthoBasis(vectors, Dims{static_cast<std::size_t>(vectors.rows())}, tol) {}

  static OrthoBasis computational(const Dims& dims) {
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    return {Matrix::Identity(n, n), dims};
  }
  static OrthoBasis computational(std::size_t d) { return computational(Dims{d}); }

  /// |l_F⟩ = d^{-1/2} Σ_j ω^{jl} |j⟩ with ω = exp(2πi/d).
  static OrthoBasis fourier(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    Matrix f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index l = 0; l < n; ++l)
        f(j, l) = norm * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * l) /
                                             static_cast<double>(d));
    return OrthoBasis(std::move(f), Dims{d});
  }

  /// n-fold tensor product of the single-qubit Pauli-X or Pauli-Z eigenbasis.
  /// Bit i of the label (most significant first) selects |+⟩/|−⟩ on qubit i.
  static OrthoBasis pauli(std::size_t n_qubits, PauliAxis which) {
    if (n_qubits == 0) throw DomainError("pauli basis needs at least one qubit");
    Matrix single(2, 2);
    if (which == PauliAxis::Z) {
      single.setIdentity();
    } else {
      const double h = 1.0 / std::sqrt(2.0);
      single << h, h, h, -h;
    }
    Matrix u = single;
    for (std::size_t i = 1; i < n_qubits; ++i) u = kron_matrix(u, single);
    return {std::move(u), Dims(n_qubits, 2)};
  }

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(vectors_.rows()); }
  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] const Matrix& unitary() const { return vectors_; }
  [[nodiscard]] Vector vector(std::size_t j) const {
    return vectors_.col(static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] Operator projector(std::size_t j) const {
    return Operator::projector(vector(j), dims_);
  }
  /// The basis {|j*⟩} of complex-conjugated vectors.
  [[nodiscard]] OrthoBasis conjugate() const { return {vectors_.conjugate(), dims_}; }

 private:
  Matrix vectors_;
  Dims dims_;
};

// ---------------------------------------------------------------------------
// Classical probability
// ---------------------------------------------------------------------------

class ProbDist {
 public:
  explicit ProbDist(std::vector<double> weights, const Tolerances& tol = {})
      : weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("ProbDist: empty weight vector");
    double total = 0.0;
    for (double& w : weights_) {
      if (w < 0.0) {
        if (w < -tol.probability) throw DomainError("ProbDist: negative weight");
        w = 0.0;
      }
      total += w;
    }
    if (std::abs(total - 1.0) > tol.probability)
      throw DomainError("ProbDist: weights sum to " + std::to_string(total));
    for (double& w : weights_) w /= total;
  }

  static ProbDist uniform(std::size_t n) {
    return ProbDist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// (Σ_j √(p_j q_j))².
inline double bhattacharyya(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw DimensionError("bhattacharyya: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += std::sqrt(p[j] * q[j]);
  return s * s;
}

/// p_l(j) = |⟨j_E|l_F⟩|².
inline ProbDist overlap_distribution(const OrthoBasis& e, const OrthoBasis& f, std::size_t l) {
  if (e.dim() != f.dim()) throw DimensionError("overlap_distribution: basis dimensions differ");
  if (l >= f.dim()) throw DomainError("overlap_distribution: index out of range");
  const Vector overlaps = e.unitary().adjoint() * f.vector(l);
  std::vector<double> w(e.dim());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::norm(overlaps(static_cast<Eigen::Index>(j)));
  return ProbDist(std::move(w));
}

/// True when every |⟨j_E|l_F⟩|² equals 1/d within `tol`.
inline bool is_mutually_unbiased(const OrthoBasis& e, const OrthoBasis& f, double tol = 1e-10) {
  if (e.dim() != f.dim()) return false;
  const double target = 1.0 / static_cast<double>(e.dim());
  const Matrix g = e.unitary().adjoint() * f.unitary();
  return (g.cwiseAbs2().array() - target).abs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

inline double purity(const Operator& rho) {
  // tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

/// −log₂ tr ρ².
inline double collision_entropy(const Operator& rho) { return 0.0 - std::log2(purity(rho)); }

// ---------------------------------------------------------------------------
// Channels
// ---------------------------------------------------------------------------

/// A completely positive trace-preserving map in Kraus form.
class Channel {
 public:
  /// `tp_tol` bounds the max entry of Σ K†K − I.
  Channel(std::vector<Operator> kraus, Dims in_dims, Dims out_dims, double tp_tol = 1e-9)
      : kraus_(std::move(kraus)), in_dims_(std::move(in_dims)), out_dims_(std::move(out_dims)) {
    if (kraus_.empty()) throw DimensionError("Channel: no Kraus operators");
    for (const auto& k : kraus_)
      if (k.col_dims() != in_dims_ || k.row_dims() != out_dims_)
        throw DimensionError("Channel: Kraus operator dims " + dims_to_string(k.row_dims()) + "x" +
                             dims_to_string(k.col_dims()) + " differ from declared " +
                             dims_to_string(out_dims_) + "x" + dims_to_string(in_dims_));
    if (tp_defect() > tp_tol)
      throw NumericalError("Channel: not trace preserving (defect " + std::to_string(tp_defect()) + ")");
  }

  static Channel identity(const Dims& dims) { return {{Operator::identity(dims)}, dims, dims}; }

  static Channel unitary(const Operator& u, const Tolerances& tol = {}) {
    if (isometry_defect(u.matrix()) > tol.orthonormal) throw NumericalError("Channel::unitary: not unitary");
    return {{u}, u.col_dims(), u.row_dims()};
  }

  /// ρ ↦ tr(ρ) I/d_out.
  static Channel fully_depolarizing(const Dims& in_dims, const Dims& out_dims) {
    const auto din = static_cast<Eigen::Index>(dims_product(in_dims));
    const auto dout = static_cast<Eigen::Index>(dims_product(out_dims));
    const double s = 1.0 / std::sqrt(static_cast<double>(dout));
    std::vector<Operator> kraus;
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index b = 0; b < din; ++b) {
        Matrix k = Matrix::Zero(dout, din);
        k(a, b) = s;
        kraus.emplace_back(std::move(k), out_dims, in_dims);
      }
    return {std::move(kraus), in_dims, out_dims};
  }

  /// Complete dephasing in `basis`: ρ ↦ Σ_j ⟨j|ρ|j⟩ |j⟩⟨j|.
  static Channel dephasing(const OrthoBasis& basis) {
    std::vector<Operator> kraus;
    for (std::size_t j = 0; j < basis.dim(); ++j) kraus.push_back(basis.projector(j));
    return {std::move(kraus), basis.dims(), basis.dims()};
  }

  /// Stinespring isometry V: in → (row subsystems of V); the row subsystems
  /// listed in `env_systems` are traced out by slicing them in the
  /// computational basis.
  static Channel from_isometry(const Operator& v, std::span<const std::size_t> env_systems,
                               const Tolerances& tol = {}) {
    const Dims& rd = v.row_dims();
    const std::size_t n = rd.size();
    std::vector<bool> is_env(n, false);
    for (auto e : env_systems) {
      if (e >= n) throw DomainError("from_isometry: environment index out of range");
      is_env[e] = true;
    }
    Dims out_dims, env_dims;
    for (std::size_t i = 0; i < n; ++i) (is_env[i] ? env_dims : out_dims).push_back(rd[i]);
    if (out_dims.empty()) out_dims.push_back(1);
    if (env_dims.empty()) env_dims.push_back(1);
    const std::size_t dout = dims_product(out_dims);
    const std::size_t denv = dims_product(env_dims);

    std::vector<Matrix> slices(denv, Matrix::Zero(static_cast<Eigen::Index>(dout), v.cols()));
    std::vector<std::size_t> digits(n, 0);
    for (Eigen::Index row = 0; row < v.rows(); ++row) {
      std::size_t out_lin = 0, env_lin = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (is_env[i]) env_lin = env_lin * rd[i] + digits[i];
        else out_lin = out_lin * rd[i] + digits[i];
      }
      slices[env_lin].row(static_cast<Eigen::Index>(out_lin)) = v.matrix().row(row);
      for (std::size_t i = n; i-- > 0;) {
        if (++digits[i] < rd[i]) break;
        digits[i] = 0;
      }
    }
    std::vector<Operator> kraus;
    for (auto& s : slices)
      if (s.cwiseAbs().maxCoeff() > 0.0) kraus.emplace_back(std::move(s), out_dims, v.col_dims());
    return {std::move(kraus), v.col_dims(), out_dims, tol.completeness};
  }

  /// Choi operator J = Σ_{c,c'} |c⟩⟨c'| ⊗ T(|c⟩⟨c'|) on in ⊗ out.
  [[nodiscard]] Operator choi() const {
    const Eigen::Index din = static_cast<Eigen::Index>(dims_product(in_dims_));
    const Eigen::Index dout = static_cast<Eigen::Index>(dims_product(out_dims_));
    Matrix j = Matrix::Zero(din * dout, din * dout);
    for (const auto& k : kraus_) {
      // vec(K) with input index most significant: v(c * dout + a) = K(a, c).
      Vector v(din * dout);
      for (Eigen::Index c = 0; c < din; ++c) v.segment(c * dout, dout) = k.matrix().col(c);
      j.noalias() += v * v.adjoint();
    }
    Dims dims = in_dims_;
    dims.insert(dims.end(), out_dims_.begin(), out_dims_.end());
    return {std::move(j), dims};
  }

  /// Channel whose Choi operator (in ⊗ out ordering) is `choi`; Kraus operators
  /// come from its eigendecomposition, so their number equals the Choi rank.
  static Channel from_choi(const Operator& choi, const Dims& in_dims, const Dims& out_dims,
                           const Tolerances& tol = {}) {
    const Eigen::Index din = static_cast<Eigen::Index>(dims_product(in_dims));
    const Eigen::Index dout = static_cast<Eigen::Index>(dims_product(out_dims));
    if (choi.rows() != din * dout) throw DimensionError("from_choi: Choi size mismatch");
    const HermitianEig eig = eig_hermitian(choi, tol);
    const double threshold = tol.relative_rank_tol(choi.dim()) * std::max(eig.max_eigenvalue(), 0.0);
    std::vector<Operator> kraus;
    for (Eigen::Index i = eig.eigenvalues.size(); i-- > 0;) {
      const double l = eig.eigenvalues(i);
      if (l <= threshold) break;
      const Vector v = std::sqrt(l) * eig.eigenvectors.matrix().col(i);
      Matrix k(dout, din);
      for (Eigen::Index c = 0; c < din; ++c) k.col(c) = v.segment(c * dout, dout);
      kraus.emplace_back(std::move(k), out_dims, in_dims);
    }
    return {std::move(kraus), in_dims, out_dims, tol.completeness};
  }

  [[nodiscard]] const std::vector<Operator>& kraus() const { return kraus_; }
  [[nodiscard]] const Dims& in_dims() const { return in_dims_; }
  [[nodiscard]] const Dims& out_dims() const { return out_dims_; }
  [[nodiscard]] std::size_t in_dim() const { return dims_product(in_dims_); }
  [[nodiscard]] std::size_t out_dim() const { return dims_product(out_dims_); }

  /// Max entry of Σ K†K − I.
  [[nodiscard]] double tp_defect() const {
    const auto din = static_cast<Eigen::Index>(in_dim());
    Matrix s = Matrix::Zero(din, din);
    for (const auto& k : kraus_) s.noalias() += k.matrix().adjoint() * k.matrix();
    return (s - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
  }

  /// T(ρ) for an operator on exactly the input space.
  [[nodiscard]] Operator operator()(const Operator& rho) const {
    if (rho.row_dims() != in_dims_ || rho.col_dims() != in_dims_)
      throw DimensionError("Channel: input dims " + dims_to_string(rho.row_dims()) + " vs " +
                           dims_to_string(in_dims_));
    const auto dout = static_cast<Eigen::Index>(out_dim());
    Matrix out = Matrix::Zero(dout, dout);
    for (const auto& k : kraus_) out.noalias() += k.matrix() * rho.matrix() * k.matrix().adjoint();
    return {std::move(out), out_dims_};
  }

  /// Heisenberg picture T†(X) = Σ K† X K.
  [[nodiscard]] Operator adjoint_apply(const Operator& x) const {
    if (x.row_dims() != out_dims_ || x.col_dims() != out_dims_)
      throw DimensionError("Channel::adjoint_apply: dims mismatch");
    const auto din = static_cast<Eigen::Index>(in_dim());
    Matrix out = Matrix::Zero(din, din);
    for (const auto& k : kraus_) out.noalias() += k.matrix().adjoint() * x.matrix() * k.matrix();
    return {std::move(out), in_dims_};
  }

 private:
  std::vector<Operator> kraus_;
  Dims in_dims_;
  Dims out_dims_;
};

/// Applies `ch` to the subsystems `target` of `state` and the identity
/// elsewhere. The channel's output subsystems take the place of the lowest
/// target index; untouched subsystems keep their relative order.
inline Operator apply_channel(const Channel& ch, const Operator& state,
                              std::span<const std::size_t> target) {
  if (!state.is_endomorphism()) throw DimensionError("apply_channel: state must be square");
  const Dims& dims = state.row_dims();
  const std::size_t n = dims.size();
  std::vector<bool> is_target(n, false);
  Dims target_dims;
  for (auto t : target) {
    if (t >= n || is_target[t]) throw DomainError("apply_channel: bad target index");
    is_target[t] = true;
    target_dims.push_back(dims[t]);
  }
  if (target_dims != ch.in_dims())
    throw DimensionError("apply_channel: target dims " + dims_to_string(target_dims) +
                         " do not match channel input " + dims_to_string(ch.in_dims()));

  std::vector<std::size_t> perm(target.begin(), target.end());
  Dims rest_dims;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_target[i]) {
      perm.push_back(i);
      rest.push_back(i);
      rest_dims.push_back(dims[i]);
    }
  const Operator p = permute_systems(state, perm);
  const auto din = static_cast<Eigen::Index>(ch.in_dim());
  const auto dout = static_cast<Eigen::Index>(ch.out_dim());
  const auto dr = static_cast<Eigen::Index>(dims_product(rest_dims));
  const Matrix& rho = p.matrix();

  Matrix out = Matrix::Zero(dout * dr, dout * dr);
  if (dr == 1) {
    for (const auto& k : ch.kraus()) out.noalias() += k.matrix() * rho * k.matrix().adjoint();
  } else {
    Matrix left(dout * dr, din * dr);
    for (const auto& k : ch.kraus()) {
      const Matrix& km = k.matrix();
      left.setZero();
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index i = 0; i < din; ++i)
          if (km(a, i) != cplx{0.0, 0.0}) left.middleRows(a * dr, dr) += km(a, i) * rho.middleRows(i * dr, dr);
      for (Eigen::Index b = 0; b < dout; ++b)
        for (Eigen::Index j = 0; j < din; ++j)
          if (km(b, j) != cplx{0.0, 0.0})
            out.middleCols(b * dr, dr) += std::conj(km(b, j)) * left.middleCols(j * dr, dr);
    }
  }

  // Current order: [channel outputs..., rest...]. Move outputs to min(target).
  Dims cur_dims = ch.out_dims();
  cur_dims.insert(cur_dims.end(), rest_dims.begin(), rest_dims.end());
  const Operator current(std::move(out), cur_dims);
  if (rest.empty()) return current;
  const std::size_t first_target = *std::min_element(target.begin(), target.end());
  const std::size_t n_out = ch.out_dims().size();
  std::vector<std::size_t> final_perm;
  std::size_t rest_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == first_target)
      for (std::size_t o = 0; o < n_out; ++o) final_perm.push_back(o);
    if (!is_target[i]) final_perm.push_back(n_out + rest_pos++);
  }
  return permute_systems(current, final_perm);
}

inline Operator apply_channel(const Channel& ch, const Operator& state, std::initializer_list<std::size_t> target) {
  const std::vector<std::size_t> t(target);
  return apply_channel(ch, state, std::span<const std::size_t>(t));
}

/// later ∘ earlier, with all pairwise Kraus products.
inline Channel compose(const Channel& later, const Channel& earlier) {
  if (earlier.out_dims() != later.in_dims())
    throw DimensionError("compose: " + dims_to_string(earlier.out_dims()) + " feeds " +
                         dims_to_string(later.in_dims()));
  std::vector<Operator> kraus;
  kraus.reserve(later.kraus().size() * earlier.kraus().size());
  for (const auto& a : later.kraus())
    for (const auto& b : earlier.kraus()) kraus.push_back(a * b);
  return {std::move(kraus), earlier.in_dims(), later.out_dims(), 1e-8};
}

// ---------------------------------------------------------------------------
// POVMs
// ---------------------------------------------------------------------------

/// Ordered positive operators summing to the identity; outcome j is element j.
class Povm {
 public:
  explicit Povm(std::vector<Operator> elements, const Tolerances& tol = {})
      : elements_(std::move(elements)) {
    if (elements_.empty()) throw DimensionError("Povm: no elements");
    const Dims& dims = elements_.front().row_dims();
    const auto n = static_cast<Eigen::Index>(dims_product(dims));
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& m : elements_) {
      if (m.row_dims() != dims || m.col_dims() != dims) throw DimensionError("Povm: elements on different spaces");
      if (!is_psd(m, tol)) throw NumericalError("Povm: element is not positive semidefinite");
      sum += m.matrix();
    }
    if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol.completeness)
      throw NumericalError("Povm: elements do not sum to the identity");
  }

  /// The projective measurement {|j⟩⟨j|} in `basis`.
  static Povm projective(const OrthoBasis& basis) {
    std::vector<Operator> el;
    for (std::size_t j = 0; j < basis.dim(); ++j) el.push_back(basis.projector(j));
    return Povm(std::move(el));
  }

  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] const Operator& operator[](std::size_t j) const { return elements_[j]; }
  [[nodiscard]] const std::vector<Operator>& elements() const { return elements_; }
  [[nodiscard]] const Dims& dims() const { return elements_.front().row_dims(); }
  [[nodiscard]] std::size_t dim() const { return elements_.front().dim(); }

 private:
  std::vector<Operator> elements_;
};

/// Measure-and-prepare channel ρ ↦ Σ_j tr[ρ M_j] |j_W⟩⟨j_W|.
inline Channel measurement_channel(const Povm& povm, const OrthoBasis& basis, const Tolerances& tol = {}) {
  if (povm.size() != basis.dim()) throw DimensionError("measurement_channel: outcome count differs from basis size");
  std::vector<Operator> kraus;
  const auto dc = static_cast<Eigen::Index>(povm.dim());
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const Operator root = sqrt_psd(povm[j], tol);
    const Vector out = basis.vector(j);
    for (Eigen::Index m = 0; m < dc; ++m) {
      Matrix k = out * root.matrix().row(m);
      kraus.emplace_back(std::move(k), basis.dims(), povm.dims());
    }
  }
  return {std::move(kraus), povm.dims(), basis.dims(), tol.completeness};
}

// ---------------------------------------------------------------------------
// Standard states
// ---------------------------------------------------------------------------

/// Φ = |Φ⟩⟨Φ| with |Φ⟩ = d^{-1/2} Σ_j |j⟩⊗|j⟩; dims [d, d].
inline Operator max_entangled(std::size_t d) {
  if (d == 0) throw DomainError("max_entangled: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  Vector v = Vector::Zero(n * n);
  for (Eigen::Index j = 0; j < n; ++j) v(j * n + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return Operator::projector(v, Dims{d, d});
}

inline Operator maximally_mixed(const Dims& dims) {
  return (1.0 / static_cast<double>(dims_product(dims))) * Operator::identity(dims);
}

/// Whether the reference copy of a correlated state uses |j_W⟩ or |j_W*⟩.
enum class ReferenceConvention { Plain, Conjugate };

/// Ω_W = d^{-1} Σ_j |j_W⟩⟨j_W| ⊗ |j'⟩⟨j'| with |j'⟩ = |j_W⟩ (Plain) or |j_W*⟩
/// (Conjugate). The Conjugate form equals the W*-dephased reference of Φ.
inline Operator max_correlated_classical(const OrthoBasis& basis,
                                         ReferenceConvention convention = ReferenceConvention::Plain) {
  const std::size_t d = basis.dim();
  const OrthoBasis ref = convention == ReferenceConvention::Plain ? basis : basis.conjugate();
  Dims dims{d, d};
  Operator out = Operator::zero(dims, dims);
  for (std::size_t j = 0; j < d; ++j)
    out = out + (1.0 / static_cast<double>(d)) * kron(basis.projector(j).with_dims({d}, {d}),
                                                        ref.projector(j).with_dims({d}, {d}));
  return out;
}

/// A purification Σ_i √λ_i |v_i⟩ ⊗ |i⟩ of ρ, eigenvalues in descending order.
struct Purification {
  Vector vector;
  Dims system_dims;
  std::size_t env_dim;

  [[nodiscard]] Operator state() const {
    Dims dims = system_dims;
    dims.push_back(env_dim);
    return Operator::projector(vector, dims);
  }
};

/// `minimal` sizes the environment to the numerical rank of ρ; otherwise the
/// environment is a copy of the whole system.
inline Purification purification(const Operator& rho, bool minimal = false, const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(rho, tol);
  if (eig.min_eigenvalue() < -tol.psd) throw NumericalError("purify: input is not PSD");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  const double threshold = tol.relative_rank_tol(rho.dim()) * std::max(eig.max_eigenvalue(), 0.0);
  Eigen::Index env = d;
  if (minimal) {
    env = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (eig.eigenvalues(i) > threshold) ++env;
    env = std::max<Eigen::Index>(env, 1);
  }
  Vector psi = Vector::Zero(d * env);
  for (Eigen::Index r = 0; r < env; ++r) {
    const Eigen::Index i = d - 1 - r;  // descending
    const double l = std::max(eig.eigenvalues(i), 0.0);
    const Vector v = eig.eigenvectors.matrix().col(i);
    for (Eigen::Index s = 0; s < d; ++s) psi(s * env + r) += std::sqrt(l) * v(s);
  }
  return {std::move(psi), rho.row_dims(), static_cast<std::size_t>(env)};
}

inline Operator purify(const Operator& rho, const Tolerances& tol = {}) {
  return purification(rho, false, tol).state();
}

}  // namespace ctoq
