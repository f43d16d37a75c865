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

// Projection-based pretty-good measurements and their error bounds.
//
// For output states τ_j = T(|j_W⟩⟨j_W|) with support projections Π_j and
// Π = Σ_j Π_j, the measurement has elements Π^{-1/2} Π_j Π^{-1/2}. The part of
// C outside supp(Π) is never reached by any τ_j and is folded into outcome 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ctoq/ctoq.hpp"

namespace ctoq {

/// Projection onto the eigenspaces of ρ with eigenvalue above rank_tol·λ_max.
inline Operator support_projection(const Operator& rho, std::optional<double> rank_tol = std::nullopt,
                                   const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(rho, tol);
  const double rel = rank_tol.value_or(tol.relative_rank_tol(rho.dim()));
  const double threshold = rel * std::max(eig.max_eigenvalue(), 0.0);
  const Matrix& v = eig.eigenvectors.matrix();
  Matrix p = Matrix::Zero(v.rows(), v.rows());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > threshold) p.noalias() += v.col(i) * v.col(i).adjoint();
  return {std::move(p), rho.row_dims()};
}

/// Smallest eigenvalue of ρ above rank_tol·λ_max.
inline double min_support_eigenvalue(const Operator& rho, std::optional<double> rank_tol = std::nullopt,
                                     const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(rho, tol);
  const double rel = rank_tol.value_or(tol.relative_rank_tol(rho.dim()));
  const double threshold = rel * std::max(eig.max_eigenvalue(), 0.0);
  double best = eig.max_eigenvalue();
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > threshold) best = std::min(best, eig.eigenvalues(i));
  return best;
}

struct PpgmBundle {
  Povm povm;
  std::vector<Operator> projectors;
  Operator pi_sum;
  std::vector<Operator> tau_states;
  Operator tau_avg;
  /// min_j of the smallest nonzero eigenvalue of τ_j.
  double lambda_min;
  /// Relative rank tolerance used for support detection.
  double rank_tol;
  /// I − supp(Π), already merged into outcome 0.
  Operator residual;

  [[nodiscard]] std::size_t d() const { return tau_states.size(); }
  /// λ_min below ten times the rank tolerance.
  [[nodiscard]] bool ill_conditioned() const { return lambda_min < 10.0 * rank_tol; }
};

/// Build the pPGM for the output states of `channel` on the vectors of `basis`.
inline PpgmBundle build_ppgm_from_states(std::vector<Operator> taus, std::optional<double> rank_tol = std::nullopt,
                                         const Tolerances& tol = {}) {
  if (taus.empty()) throw DimensionError("build_ppgm: no states");
  const Dims dims = taus.front().row_dims();
  const std::size_t d = taus.size();
  const double rel = rank_tol.value_or(tol.relative_rank_tol(taus.front().dim()));

  std::vector<Operator> proj;
  Operator pi = Operator::zero(dims, dims);
  Operator avg = Operator::zero(dims, dims);
  double lmin = 1.0;
  for (const auto& t : taus) {
    proj.push_back(support_projection(t, rel, tol));
    pi = pi + proj.back();
    avg = avg + (1.0 / static_cast<double>(d)) * t;
    lmin = std::min(lmin, min_support_eigenvalue(t, rel, tol));
  }
  const Operator pi_inv_half = func_on_support(pi, [](double x) { return 1.0 / std::sqrt(x); }, rel, tol);
  const Operator supp = support_projection(pi, rel, tol);
  const Operator residual = Operator::identity(dims) - supp;

  std::vector<Operator> el;
  for (std::size_t j = 0; j < d; ++j) {
    Matrix m = pi_inv_half.matrix() * proj[j].matrix() * pi_inv_half.matrix();
    if (j == 0) m += residual.matrix();
    m = 0.5 * (m + m.adjoint()).eval();
    el.emplace_back(std::move(m), dims);
  }
  return {Povm(std::move(el), tol), std::move(proj), std::move(pi), std::move(taus), std::move(avg),
          lmin, rel, residual};
}

inline PpgmBundle build_ppgm(const Channel& channel, const OrthoBasis& basis,
                             std::optional<double> rank_tol = std::nullopt, const Tolerances& tol = {}) {
  return build_ppgm_from_states(channel_outputs(channel, basis), rank_tol, tol);
}

/// Δ_cl of the bundle's measurement on its own cached states.
inline double delta_cl(const PpgmBundle& bundle) { return delta_cl_from_outputs(bundle.povm, bundle.tau_states); }

inline double trace_product(const Operator& a, const Operator& b) {
  return (a.matrix().cwiseProduct(b.matrix().transpose())).sum().real();
}

struct Prop2Bound {
  /// (1/(d λ_min)) Σ_{i≠j} tr[τ_i τ_j].
  double sum_form;
  /// (1/λ_min) (d·2^{-H2(τ_π)} − (1/d) Σ_j 2^{-H2(τ_j)}).
  double entropy_form;
  double lambda_min;
  bool ill_conditioned;
  /// The bound is at least 1 and says nothing.
  bool vacuous;
};

inline Prop2Bound prop2_bound(const PpgmBundle& b) {
  const auto d = static_cast<double>(b.d());
  double cross = 0.0;
  for (std::size_t i = 0; i < b.d(); ++i)
    for (std::size_t j = 0; j < b.d(); ++j)
      if (i != j) cross += trace_product(b.tau_states[i], b.tau_states[j]);
  const double sum_form = cross / (d * b.lambda_min);

  double diag = 0.0;
  for (const auto& t : b.tau_states) diag += std::exp2(-collision_entropy(t));
  const double entropy_form = (d * std::exp2(-collision_entropy(b.tau_avg)) - diag / d) / b.lambda_min;
  return {sum_form, entropy_form, b.lambda_min, b.ill_conditioned(), sum_form >= 1.0};
}

/// (1/d) Σ_{i≠j} tr[Π_i τ_j].
inline double appendix_b_bound(const PpgmBundle& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.d(); ++i)
    for (std::size_t j = 0; j < b.d(); ++j)
      if (i != j) s += trace_product(b.projectors[i], b.tau_states[j]);
  return s / static_cast<double>(b.d());
}

/// Largest probability with which the residual element fires on any τ_j.
inline double residual_weight(const PpgmBundle& b) {
  double w = 0.0;
  for (const auto& t : b.tau_states) w = std::max(w, trace_product(b.residual, t));
  return w;
}

}  // namespace ctoq
