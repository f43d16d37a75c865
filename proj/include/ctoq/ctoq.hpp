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

// Classical-to-quantum decoders.
//
// Given a channel T: A → C and two POVMs on C that decode classical
// information written in bases E and F of A, the decoder
//
//     D = Q_F ∘ R_E
//
// first measures C coherently with M_E and writes the outcome into a fresh
// copy of A in the E basis (R_E), then measures C with M_F and applies the
// outcome-dependent diagonal phase Θ_l on A (Q_F, a quantum eraser).
//
// R_E is built from the canonical Naimark extension V = Σ_j √M_j ⊗ |j⟩ of M_E
// and the isometry V_inv = V† ⊗ |e0⟩ + |e0'⟩ ⊗ (I − VV†). The literal stage
// channels are available from CtoQDecoder::coherent_measurement() and
// CtoQDecoder::eraser(); CtoQDecoder::total is assembled from a closed form of
// their composition (see structured_ctoq_kraus) and is cross-checked against
// compose(eraser, coherent_measurement) in the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "ctoq/qcore.hpp"

namespace ctoq {

namespace detail {

inline Dims concat(Dims a, const Dims& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::vector<std::size_t> iota_indices(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + i;
  return v;
}

/// The same matrix with subsystem structure `dims` (products must agree).
inline Operator reshape_square(const Operator& op, const Dims& dims) {
  if (op.row_dims() == dims && op.col_dims() == dims) return op;
  return op.with_dims(dims, dims);
}

}  // namespace detail

/// Φ^{AR} with A carrying `a_dims` and R a single subsystem of the same total size.
inline Operator max_entangled_on(const Dims& a_dims) {
  const std::size_t d = dims_product(a_dims);
  const Dims dims = detail::concat(a_dims, Dims{d});
  return max_entangled(d).with_dims(dims, dims);
}

// ---------------------------------------------------------------------------
// Error functionals
// ---------------------------------------------------------------------------

/// ½‖Φ^{AR} − (D∘T)(Φ^{AR})‖₁.
inline double delta_q(const Channel& decoder, const Channel& channel, const Tolerances& tol = {}) {
  if (decoder.in_dims() != channel.out_dims())
    throw DimensionError("delta_q: decoder input " + dims_to_string(decoder.in_dims()) +
                         " does not match channel output " + dims_to_string(channel.out_dims()));
  if (decoder.out_dim() != channel.in_dim())
    throw DimensionError("delta_q: decoder output dimension differs from channel input");
  const Operator phi = max_entangled_on(channel.in_dims());
  const Operator after_t =
      apply_channel(channel, phi, detail::iota_indices(0, channel.in_dims().size()));
  const Operator after_d =
      apply_channel(decoder, after_t, detail::iota_indices(0, channel.out_dims().size()));
  return trace_distance(max_entangled_on(decoder.out_dims()), after_d, tol);
}

/// T(|j_W⟩⟨j_W|) for every j.
inline std::vector<Operator> channel_outputs(const Channel& channel, const OrthoBasis& basis) {
  if (basis.dim() != channel.in_dim()) throw DimensionError("basis dimension differs from channel input");
  std::vector<Operator> out;
  out.reserve(basis.dim());
  for (std::size_t j = 0; j < basis.dim(); ++j)
    out.push_back(channel(detail::reshape_square(basis.projector(j), channel.in_dims())));
  return out;
}

/// (1/d) Σ_{i≠j} tr[τ_i M_j] for precomputed τ_i = T(|i_W⟩⟨i_W|).
inline double delta_cl_from_outputs(const Povm& povm, std::span<const Operator> outputs) {
  const std::size_t d = outputs.size();
  if (povm.size() != d) throw DimensionError("delta_cl: POVM outcome count differs from d");
  double err = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) err += (outputs[i].matrix().cwiseProduct(povm[j].matrix().transpose())).sum().real();
  return err / static_cast<double>(d);
}

/// Probability-of-error form: (1/d) Σ_{i≠j} tr[T(|i_W⟩⟨i_W|) M_j].
inline double delta_cl(const Povm& povm, const Channel& channel, const OrthoBasis& basis) {
  if (povm.size() != basis.dim()) throw DimensionError("delta_cl: POVM outcome count differs from d");
  if (povm.dims() != channel.out_dims()) throw DimensionError("delta_cl: POVM is not on the channel output");
  const auto outputs = channel_outputs(channel, basis);
  return delta_cl_from_outputs(povm, outputs);
}

/// Trace-norm form ½‖Ω_W − D_M∘T(Ω_W)‖₁ with the conjugate-reference Ω_W.
inline double delta_cl_trace_norm(const Povm& povm, const Channel& channel, const OrthoBasis& basis,
                                  const Tolerances& tol = {}) {
  const std::size_t d = basis.dim();
  const Dims a_dims = channel.in_dims();
  const Dims dims = detail::concat(a_dims, Dims{d});
  const Operator omega =
      max_correlated_classical(basis, ReferenceConvention::Conjugate).with_dims(dims, dims);
  const Operator after_t = apply_channel(channel, omega, detail::iota_indices(0, a_dims.size()));
  const Channel dm = measurement_channel(povm, basis, tol);
  const Operator after_m = apply_channel(dm, after_t, detail::iota_indices(0, channel.out_dims().size()));
  const Dims ref_dims = detail::concat(basis.dims(), Dims{d});
  return trace_distance(omega.with_dims(ref_dims, ref_dims), after_m, tol);
}

// ---------------------------------------------------------------------------
// Naimark extension and the coherent measurement R_E
// ---------------------------------------------------------------------------

/// Isometry V: C → C' and orthogonal projections P_j on C' with V†P_jV = M_j.
struct NaimarkExtension {
  Operator isometry;
  std::vector<Operator> projections;

  [[nodiscard]] const Dims& input_dims() const { return isometry.col_dims(); }
  [[nodiscard]] const Dims& extended_dims() const { return isometry.row_dims(); }
  [[nodiscard]] std::size_t outcomes() const { return projections.size(); }
};

/// Canonical extension on C' = C ⊗ (outcome register):
/// V = Σ_j √M_j ⊗ |j⟩, P_j = I_C ⊗ |j⟩⟨j|.
inline NaimarkExtension naimark_extend(const Povm& povm, const Tolerances& tol = {}) {
  const auto dc = static_cast<Eigen::Index>(povm.dim());
  const auto m = static_cast<Eigen::Index>(povm.size());
  Matrix v = Matrix::Zero(dc * m, dc);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Operator root = sqrt_psd(povm[static_cast<std::size_t>(j)], tol);
    for (Eigen::Index r = 0; r < dc; ++r) v.row(r * m + j) = root.matrix().row(r);
  }
  const Dims ext_dims = detail::concat(povm.dims(), Dims{static_cast<std::size_t>(m)});
  std::vector<Operator> proj;
  for (Eigen::Index j = 0; j < m; ++j) {
    Matrix reg = Matrix::Zero(m, m);
    reg(j, j) = 1.0;
    proj.emplace_back(kron_matrix(Matrix::Identity(dc, dc), reg), ext_dims);
  }
  if (isometry_defect(v) > tol.completeness) throw NumericalError("naimark_extend: V is not an isometry");
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const Matrix back = v.adjoint() * proj[j].matrix() * v;
    if ((back - povm[j].matrix()).cwiseAbs().maxCoeff() > 1e-8)
      throw NumericalError("naimark_extend: V†P_jV does not reproduce M_j");
  }
  return {Operator(std::move(v), ext_dims, povm.dims()), std::move(proj)};
}

/// The default |e0⟩ = V|c0⟩ with |c0⟩ the first computational basis vector of C.
inline Vector default_e0(const NaimarkExtension& ext) { return ext.isometry.matrix().col(0); }

/// The default |e0'⟩: first computational basis vector of C.
inline Vector default_e0_prime(const NaimarkExtension& ext) {
  Vector e = Vector::Zero(ext.isometry.cols());
  e(0) = 1.0;
  return e;
}

/// V_inv = V† ⊗ |e0⟩ + |e0'⟩ ⊗ (I − VV†), an isometry C' → C ⊗ C'.
inline Operator build_v_inv(const NaimarkExtension& ext, const Vector& e0, const Vector& e0p,
                            const Tolerances& tol = {}) {
  const Matrix& v = ext.isometry.matrix();
  if (e0.size() != v.rows() || e0p.size() != v.cols()) throw DimensionError("build_v_inv: vector sizes");
  if (std::abs(e0.norm() - 1.0) > tol.range || std::abs(e0p.norm() - 1.0) > tol.range)
    throw DomainError("build_v_inv: e0 and e0' must be unit vectors");
  const Matrix range_proj = v * v.adjoint();
  const Matrix q = Matrix::Identity(v.rows(), v.rows()) - range_proj;
  if ((q * e0).norm() > tol.range) throw DomainError("build_v_inv: e0 is not in the range of V");
  Matrix vinv = kron_matrix(v.adjoint(), Matrix(e0)) + kron_matrix(Matrix(e0p), q);
  if (isometry_defect(vinv) > tol.completeness) throw NumericalError("build_v_inv: result is not an isometry");
  const Dims rows = detail::concat(ext.input_dims(), ext.extended_dims());
  return {std::move(vinv), rows, ext.extended_dims()};
}

/// The isometry R_E = V_inv (Σ_j P_j ⊗ |j_E⟩) V_E : C → C ⊗ C' ⊗ A.
inline Operator coherent_measurement_isometry(const NaimarkExtension& ext, const OrthoBasis& e_basis,
                                              const Vector& e0, const Vector& e0p, const Tolerances& tol = {}) {
  if (ext.outcomes() != e_basis.dim())
    throw DimensionError("coherent measurement: outcome count differs from basis size");
  const Operator vinv = build_v_inv(ext, e0, e0p, tol);
  const auto dcp = ext.isometry.rows();
  const auto d = static_cast<Eigen::Index>(e_basis.dim());
  Matrix store = Matrix::Zero(dcp * d, dcp);
  for (std::size_t j = 0; j < ext.outcomes(); ++j)
    store += kron_matrix(ext.projections[j].matrix(), Matrix(e_basis.vector(j)));
  const Matrix r = kron_matrix(vinv.matrix(), Matrix::Identity(d, d)) * store * ext.isometry.matrix();
  const Dims rows = detail::concat(detail::concat(ext.input_dims(), ext.extended_dims()), e_basis.dims());
  return {r, rows, ext.input_dims()};
}

/// R_E(ρ) = tr_{C'}[R_E ρ R_E†] as a Kraus channel C → C ⊗ A, sliced along C'.
inline Channel build_coherent_measurement(const NaimarkExtension& ext, const OrthoBasis& e_basis,
                                          const Vector& e0, const Vector& e0p, const Tolerances& tol = {}) {
  const Operator r = coherent_measurement_isometry(ext, e_basis, e0, e0p, tol);
  const auto env = detail::iota_indices(ext.input_dims().size(), ext.extended_dims().size());
  return Channel::from_isometry(r, env, tol);
}

inline Channel build_coherent_measurement(const NaimarkExtension& ext, const OrthoBasis& e_basis,
                                          const Tolerances& tol = {}) {
  return build_coherent_measurement(ext, e_basis, default_e0(ext), default_e0_prime(ext), tol);
}

// ---------------------------------------------------------------------------
// Phase corrections and the eraser Q_F
// ---------------------------------------------------------------------------

/// Overlaps at or below this magnitude get the phase arg(0) := 0.
inline constexpr double kZeroOverlap = 1e-14;

/// Θ_l = Σ_j exp(i·arg⟨j_E|l_F⟩) |j_E⟩⟨j_E|.
inline Operator build_theta(const OrthoBasis& e_basis, const OrthoBasis& f_basis, std::size_t l) {
  if (e_basis.dim() != f_basis.dim()) throw DimensionError("build_theta: basis dimensions differ");
  if (l >= f_basis.dim()) throw DomainError("build_theta: index out of range");
  const Vector overlaps = e_basis.unitary().adjoint() * f_basis.vector(l);
  Vector phases(overlaps.size());
  for (Eigen::Index j = 0; j < overlaps.size(); ++j) {
    const double a = std::abs(overlaps(j));
    phases(j) = a > kZeroOverlap ? overlaps(j) / a : cplx{1.0, 0.0};
  }
  const Matrix& u = e_basis.unitary();
  return {u * phases.asDiagonal() * u.adjoint(), e_basis.dims()};
}

inline std::vector<Operator> build_thetas(const OrthoBasis& e_basis, const OrthoBasis& f_basis) {
  std::vector<Operator> out;
  for (std::size_t l = 0; l < f_basis.dim(); ++l) out.push_back(build_theta(e_basis, f_basis, l));
  return out;
}

/// Q_F(ρ^{CA}) = Σ_l Θ_l tr_C[M_{F,l} ρ^{CA}] Θ_l†, with Kraus operators
/// Θ_l (⟨m|√M_{F,l} ⊗ I_A) over the computational basis {|m⟩} of C.
inline Channel build_eraser(const Povm& povm_f, std::span<const Operator> thetas, const Tolerances& tol = {}) {
  if (thetas.size() != povm_f.size()) throw DimensionError("build_eraser: one phase correction per outcome");
  const Dims a_dims = thetas.front().row_dims();
  const Dims in_dims = detail::concat(povm_f.dims(), a_dims);
  std::vector<Operator> kraus;
  for (std::size_t l = 0; l < povm_f.size(); ++l) {
    const Operator root = sqrt_psd(povm_f[l], tol);
    for (Eigen::Index m = 0; m < root.rows(); ++m) {
      Matrix k = kron_matrix(root.matrix().row(m), thetas[l].matrix());
      if (k.squaredNorm() == 0.0) continue;
      kraus.emplace_back(std::move(k), a_dims, in_dims);
    }
  }
  return {std::move(kraus), in_dims, a_dims, tol.completeness};
}

// ---------------------------------------------------------------------------
// The assembled decoder
// ---------------------------------------------------------------------------

/// Kraus operators of Q_F ∘ R_E written directly as maps C → A.
///
/// With Y_j = P_j V and Q = I − VV†, ⟨e0|Q = 0 kills the cross terms of the
/// trace over C', so R_E(ρ) = K ρ K† + |e0'⟩⟨e0'| ⊗ Σ_{c'} L_{c'} ρ L_{c'}† with
/// K = Σ_a M_{E,a} ⊗ |a_E⟩ and L_{c'} = Σ_j |j_E⟩ ⟨c'|Q Y_j. Feeding this into
/// Q_F gives the operators Θ_l (⟨m|√M_{F,l} ⊗ I) K and
/// √⟨e0'|M_{F,l}|e0'⟩ Θ_l L_{c'}.
inline std::vector<Operator> structured_ctoq_kraus(const Povm& povm_e, const Povm& povm_f,
                                                   const NaimarkExtension& ext, const OrthoBasis& e_basis,
                                                   std::span<const Operator> thetas, const Vector& e0p,
                                                   const Tolerances& tol = {}) {
  const auto dc = static_cast<Eigen::Index>(povm_e.dim());
  const auto d = static_cast<Eigen::Index>(e_basis.dim());
  const Dims& c_dims = povm_e.dims();
  const Dims& a_dims = e_basis.dims();
  const Matrix& eu = e_basis.unitary();
  std::vector<Operator> kraus;

  for (std::size_t l = 0; l < povm_f.size(); ++l) {
    const Operator root = sqrt_psd(povm_f[l], tol);
    const Matrix theta_e = thetas[l].matrix() * eu;  // column a: Θ_l |a_E⟩
    for (Eigen::Index m = 0; m < dc; ++m) {
      Matrix k = Matrix::Zero(d, dc);
      for (Eigen::Index a = 0; a < d; ++a)
        k += theta_e.col(a) * (root.matrix().row(m) * povm_e[static_cast<std::size_t>(a)].matrix());
      if (k.squaredNorm() < 1e-30) continue;
      kraus.emplace_back(std::move(k), a_dims, c_dims);
    }
  }

  const Matrix& v = ext.isometry.matrix();
  const Matrix q = Matrix::Identity(v.rows(), v.rows()) - v * v.adjoint();
  std::vector<Matrix> qy;  // Q Y_j : C → C'
  for (std::size_t j = 0; j < ext.outcomes(); ++j) qy.push_back(q * ext.projections[j].matrix() * v);
  std::vector<Matrix> ls;
  for (Eigen::Index cp = 0; cp < v.rows(); ++cp) {
    Matrix lm = Matrix::Zero(d, dc);
    for (Eigen::Index j = 0; j < d; ++j) lm += eu.col(j) * qy[static_cast<std::size_t>(j)].row(cp);
    if (lm.squaredNorm() < 1e-30) continue;
    ls.push_back(std::move(lm));
  }
  for (std::size_t l = 0; l < povm_f.size(); ++l) {
    const double w = (e0p.adjoint() * povm_f[l].matrix() * e0p)(0, 0).real();
    if (w <= 0.0) continue;
    for (const auto& lm : ls) kraus.emplace_back(std::sqrt(w) * (thetas[l].matrix() * lm), a_dims, c_dims);
  }
  return kraus;
}

/// A C-to-Q decoder D_CtoQ = Q_F ∘ R_E together with the data it was built from.
struct CtoQDecoder {
  Povm povm_e;
  Povm povm_f;
  OrthoBasis e_basis;
  OrthoBasis f_basis;
  NaimarkExtension extension;
  std::vector<Operator> thetas;
  Vector e0;
  Vector e0_prime;
  /// The full decoder C → A.
  Channel total;

  /// R_E as an explicit Kraus channel C → C ⊗ A. Its Kraus count is
  /// dim(C)·d, so this is meant for small instances.
  [[nodiscard]] Channel coherent_measurement(const Tolerances& tol = {}) const {
    return build_coherent_measurement(extension, e_basis, e0, e0_prime, tol);
  }
  /// Q_F as an explicit Kraus channel C ⊗ A → A.
  [[nodiscard]] Channel eraser(const Tolerances& tol = {}) const { return build_eraser(povm_f, thetas, tol); }
  /// compose(eraser(), coherent_measurement()), built stage by stage.
  [[nodiscard]] Channel staged_total(const Tolerances& tol = {}) const {
    return compose(eraser(tol), coherent_measurement(tol));
  }
};

inline CtoQDecoder build_ctoq(const Povm& povm_e, const Povm& povm_f, const OrthoBasis& e_basis,
                              const OrthoBasis& f_basis, const Tolerances& tol = {}) {
  const std::size_t d = e_basis.dim();
  if (f_basis.dim() != d) throw DimensionError("build_ctoq: bases differ in dimension");
  if (povm_e.size() != d || povm_f.size() != d) throw DimensionError("build_ctoq: POVMs need d outcomes");
  if (povm_e.dims() != povm_f.dims()) throw DimensionError("build_ctoq: POVMs act on different spaces");

  NaimarkExtension ext = naimark_extend(povm_e, tol);
  Vector e0 = default_e0(ext);
  Vector e0p = default_e0_prime(ext);
  std::vector<Operator> thetas = build_thetas(e_basis, f_basis);
  std::vector<Operator> kraus = structured_ctoq_kraus(povm_e, povm_f, ext, e_basis, thetas, e0p, tol);

  const Dims& c_dims = povm_e.dims();
  const Dims& a_dims = e_basis.dims();
  Channel total(std::move(kraus), c_dims, a_dims, tol.completeness);
  if (total.kraus().size() > total.in_dim() * total.out_dim())
    total = Channel::from_choi(total.choi(), c_dims, a_dims, tol);

  return {povm_e, povm_f, e_basis, f_basis, std::move(ext), std::move(thetas),
          std::move(e0), std::move(e0p), std::move(total)};
}

// ---------------------------------------------------------------------------
// Complementarity defect and bounds
// ---------------------------------------------------------------------------

/// F_BC(unif_d, p_l) for every l.
inline std::vector<double> bhattacharyya_to_uniform(const OrthoBasis& e_basis, const OrthoBasis& f_basis) {
  const ProbDist unif = ProbDist::uniform(e_basis.dim());
  std::vector<double> out;
  for (std::size_t l = 0; l < f_basis.dim(); ++l)
    out.push_back(bhattacharyya(unif, overlap_distribution(e_basis, f_basis, l)));
  return out;
}

/// Ξ_EF = 1 − Σ_l tr[T(π) M_{F,l}] F_BC(unif_d, p_l).
inline double xi_ef(const Channel& channel, const Povm& povm_f, const OrthoBasis& e_basis,
                    const OrthoBasis& f_basis) {
  if (povm_f.size() != f_basis.dim()) throw DimensionError("xi_ef: POVM outcome count differs from d");
  const Operator tau_pi = channel(maximally_mixed(channel.in_dims()));
  const auto fbc = bhattacharyya_to_uniform(e_basis, f_basis);
  double s = 0.0;
  for (std::size_t l = 0; l < povm_f.size(); ++l)
    s += (tau_pi.matrix().cwiseProduct(povm_f[l].matrix().transpose())).sum().real() * fbc[l];
  return 1.0 - s;
}

struct XiBounds {
  /// 1 − min_l F_BC(unif_d, p_l).
  double eq15;
  /// 1 − (1/d)Σ_l F_BC + Δ_cl,F · (F_BC,max − F_BC,min).
  double eq17;
  double fbc_max;
  double fbc_min;
};

inline XiBounds xi_bounds(const Channel& channel, const Povm& povm_f, const OrthoBasis& e_basis,
                          const OrthoBasis& f_basis) {
  const auto fbc = bhattacharyya_to_uniform(e_basis, f_basis);
  const auto [mn, mx] = std::minmax_element(fbc.begin(), fbc.end());
  double mean = 0.0;
  for (double x : fbc) mean += x;
  mean /= static_cast<double>(fbc.size());
  const double df = delta_cl(povm_f, channel, f_basis);
  return {1.0 - *mn, 1.0 - mean + df * (*mx - *mn), *mx, *mn};
}

/// √(Δ_E(2 − Δ_E)) + √Δ_F + √Ξ_EF, negative inputs from round-off clipped to 0.
inline double theorem1_bound(double delta_e, double delta_f, double xi) {
  const double de = std::clamp(delta_e, 0.0, 1.0);
  return std::sqrt(de * (2.0 - de)) + std::sqrt(std::max(delta_f, 0.0)) + std::sqrt(std::max(xi, 0.0));
}

struct ErrorReport {
  double delta_q = 0.0;
  double delta_cl_e = 0.0;
  double delta_cl_f = 0.0;
  double xi_ef = 0.0;
  /// √(Δ_E(2−Δ_E)) + √Δ_F + √Ξ_EF.
  double bound_thm1 = 0.0;
  /// Same without the Ξ term; the relevant bound for mutually unbiased bases.
  double bound_cor1 = 0.0;
  double bound_eq15 = 0.0;
  double bound_eq17 = 0.0;
  double fbc_max = 0.0;
  double fbc_min = 0.0;

  [[nodiscard]] double thm1_slack() const { return bound_thm1 - delta_q; }
};

inline ErrorReport theorem1_report(const Channel& channel, const Povm& povm_e, const Povm& povm_f,
                                   const OrthoBasis& e_basis, const OrthoBasis& f_basis,
                                   const Tolerances& tol = {}) {
  const CtoQDecoder dec = build_ctoq(povm_e, povm_f, e_basis, f_basis, tol);
  ErrorReport r;
  r.delta_q = delta_q(dec.total, channel, tol);
  r.delta_cl_e = delta_cl(povm_e, channel, e_basis);
  r.delta_cl_f = delta_cl(povm_f, channel, f_basis);
  r.xi_ef = xi_ef(channel, povm_f, e_basis, f_basis);
  const XiBounds xb = xi_bounds(channel, povm_f, e_basis, f_basis);
  r.bound_eq15 = xb.eq15;
  r.bound_eq17 = xb.eq17;
  r.fbc_max = xb.fbc_max;
  r.fbc_min = xb.fbc_min;
  r.bound_thm1 = theorem1_bound(r.delta_cl_e, r.delta_cl_f, r.xi_ef);
  r.bound_cor1 = theorem1_bound(r.delta_cl_e, r.delta_cl_f, 0.0);
  return r;
}

/// Reports for both assignments (E, F) and (F, E) of the two POVM/basis pairs.
inline std::pair<ErrorReport, ErrorReport> theorem1_report_both_orders(const Channel& channel, const Povm& povm_e,
                                                                       const Povm& povm_f, const OrthoBasis& e_basis,
                                                                       const OrthoBasis& f_basis,
                                                                       const Tolerances& tol = {}) {
  return {theorem1_report(channel, povm_e, povm_f, e_basis, f_basis, tol),
          theorem1_report(channel, povm_f, povm_e, f_basis, e_basis, tol)};
}

// ---------------------------------------------------------------------------
// Decoder-derived POVMs and the GHZ diagnostic
// ---------------------------------------------------------------------------

/// M_j = D†(|j_W⟩⟨j_W|).
inline Povm povm_from_decoder(const Channel& decoder, const OrthoBasis& basis, const Tolerances& tol = {}) {
  if (basis.dim() != decoder.out_dim()) throw DimensionError("povm_from_decoder: basis is not on the decoder output");
  std::vector<Operator> el;
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    const Operator m = decoder.adjoint_apply(detail::reshape_square(basis.projector(j), decoder.out_dims()));
    el.emplace_back(0.5 * (m.matrix() + m.matrix().adjoint()), m.row_dims());
  }
  return Povm(std::move(el), tol);
}

/// (1/d) Σ_{j,i} |j_E*⟩⟨i_E*|^R ⊗ T(|j_E⟩⟨i_E|)^C ⊗ |j_E⟩⟨i_E|^A, ordered R ⊗ C ⊗ A.
inline Operator noisy_ghz_state(const Channel& channel, const OrthoBasis& e_basis) {
  const std::size_t d = e_basis.dim();
  if (channel.in_dim() != d) throw DimensionError("noisy_ghz_state: basis is not on the channel input");
  const Dims dims = detail::concat(detail::concat(Dims{d}, channel.out_dims()), e_basis.dims());
  const auto n = static_cast<Eigen::Index>(dims_product(dims));
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      const Vector ej = e_basis.vector(j);
      const Vector ei = e_basis.vector(i);
      const Matrix ref = ej.conjugate() * ei.transpose();  // |j*⟩⟨i*|
      const Matrix ket_bra = ej * ei.adjoint();
      const Matrix mid = channel(Operator(ket_bra, channel.in_dims())).matrix();
      out += kron_matrix(kron_matrix(ref, mid), ket_bra);
    }
  out /= static_cast<double>(d);
  return {std::move(out), dims};
}

/// (R_E ∘ T)(Φ^{AR}) reordered to R ⊗ C ⊗ A, for comparison with noisy_ghz_state.
inline Operator coherent_measurement_output(const Channel& coherent, const Channel& channel) {
  const std::size_t na = channel.in_dims().size();
  const std::size_t nc = channel.out_dims().size();
  const Operator phi = max_entangled_on(channel.in_dims());
  const Operator after_t = apply_channel(channel, phi, detail::iota_indices(0, na));
  const Operator after_r = apply_channel(coherent, after_t, detail::iota_indices(0, nc));
  const std::size_t n_out = coherent.out_dims().size();  // C subsystems then A subsystems
  std::vector<std::size_t> perm{n_out};
  for (std::size_t i = 0; i < n_out; ++i) perm.push_back(i);
  return permute_systems(after_r, perm);
}

}  // namespace ctoq
