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

// Hayden–Preskill experiments with Haar-random scrambling.
//
// A k-qubit message A joins an N-qubit black hole B_in whose state ξ is
// purified by earlier radiation B_rad. S = A ⊗ B_in evolves by a Haar unitary
// U and its last ℓ qubits S_rad are radiated. The channel studied is
//
//     T: A → B_rad ⊗ S_rad,  ρ ↦ tr_{S_in}[(U ⊗ I)(ρ ⊗ |ψ_ξ⟩⟨ψ_ξ|)(U ⊗ I)†].
//
// B_rad is sized to the rank of ξ (minimal purification).

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ctoq/ctoq.hpp"
#include "ctoq/ppgm.hpp"
#include "ctoq/random.hpp"

namespace ctoq {

/// Description of the initial black-hole state.
struct XiSpec {
  enum class Kind { Pure, Mixed, MaximallyMixed };
  Kind kind = Kind::Pure;
  /// Leading eigenvalues for Kind::Mixed; padded with zeros.
  std::vector<double> spectrum;

  [[nodiscard]] std::string to_string() const {
    switch (kind) {
      case Kind::Pure: return "pure";
      case Kind::MaximallyMixed: return "maximally_mixed";
      case Kind::Mixed: break;
    }
    std::string s = "mixed:";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      if (i) s += ',';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", spectrum[i]);
      s += buf;
    }
    return s;
  }
};

/// ξ on N qubits, diagonal in the computational basis.
inline Operator make_xi(const XiSpec& spec, std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  switch (spec.kind) {
    case XiSpec::Kind::Pure: m(0, 0) = 1.0; break;
    case XiSpec::Kind::MaximallyMixed: m.diagonal().setConstant(1.0 / static_cast<double>(dim)); break;
    case XiSpec::Kind::Mixed: {
      if (spec.spectrum.size() > dim) throw DomainError("xi spectrum longer than 2^N");
      const ProbDist p(spec.spectrum);
      for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
      break;
    }
  }
  return {std::move(m), Dims{dim}};
}

struct HpConfig {
  std::size_t n_qubits_bh = 0;   // N
  std::size_t n_qubits_msg = 1;  // k
  std::size_t n_qubits_rad = 0;  // ℓ
  Operator initial_state = Operator::identity(Dims{1});
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  /// Use E = Pauli-X, F = Pauli-Z in the decoder instead of E = Z, F = X.
  bool swap_bases = false;

  [[nodiscard]] std::size_t total_qubits() const { return n_qubits_bh + n_qubits_msg; }
  [[nodiscard]] std::size_t msg_dim() const { return std::size_t{1} << n_qubits_msg; }

  void validate() const {
    if (n_qubits_msg == 0) throw DomainError("HpConfig: k must be >= 1");
    if (n_qubits_rad > total_qubits()) throw DomainError("HpConfig: ell exceeds N + k");
    if (trials == 0) throw DomainError("HpConfig: trials must be >= 1");
    if (initial_state.dim() != (std::size_t{1} << n_qubits_bh))
      throw DimensionError("HpConfig: xi must act on 2^N dimensions");
    if (!is_psd(initial_state) || std::abs(initial_state.trace().real() - 1.0) > 1e-9)
      throw DomainError("HpConfig: xi is not a density operator");
  }
};

struct HpDerived {
  double ell_th;
  double lambda_xi;
  double h2_bin;
  std::size_t rank_xi;
};

inline HpDerived derived_quantities(const HpConfig& cfg, const Tolerances& tol = {}) {
  const HermitianEig eig = eig_hermitian(cfg.initial_state, tol);
  const double threshold = tol.relative_rank_tol(cfg.initial_state.dim()) * eig.max_eigenvalue();
  std::size_t rank = 0;
  double lmin = eig.max_eigenvalue();
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > threshold) {
      ++rank;
      lmin = std::min(lmin, eig.eigenvalues(i));
    }
  const double h2 = collision_entropy(cfg.initial_state);
  const auto n = static_cast<double>(cfg.n_qubits_bh);
  const auto k = static_cast<double>(cfg.n_qubits_msg);
  return {k + (n - h2) / 2.0, static_cast<double>(rank) * lmin, h2, rank};
}

/// The Hayden–Preskill channel for scrambler `u` on S = A ⊗ B_in.
inline Channel hp_channel(const Operator& u, const Operator& xi, const HpConfig& cfg, const Tolerances& tol = {}) {
  const std::size_t ds = std::size_t{1} << cfg.total_qubits();
  const std::size_t da = cfg.msg_dim();
  const std::size_t db = std::size_t{1} << cfg.n_qubits_bh;
  const std::size_t drad = std::size_t{1} << cfg.n_qubits_rad;
  const std::size_t din = ds / drad;
  if (u.dim() != ds || u.cols() != u.rows()) throw DimensionError("hp_channel: U must act on 2^(N+k) dimensions");
  if (xi.dim() != db) throw DimensionError("hp_channel: xi must act on 2^N dimensions");

  const Purification pur = purification(xi, true, tol);
  const std::size_t r = pur.env_dim;
  Matrix psi(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(r));  // ψ(x, b)
  for (std::size_t x = 0; x < db; ++x)
    for (std::size_t b = 0; b < r; ++b)
      psi(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(b)) = pur.vector(static_cast<Eigen::Index>(x * r + b));
  // g(s, a·r + b) = ⟨s| U (|a⟩ ⊗ ψ|b⟩)
  const Matrix g = u.matrix() * kron_matrix(Matrix::Identity(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da)), psi);

  const Dims out_dims{r, drad};
  std::vector<Operator> kraus;
  kraus.reserve(din);
  for (std::size_t s_in = 0; s_in < din; ++s_in) {
    Matrix k(static_cast<Eigen::Index>(r * drad), static_cast<Eigen::Index>(da));
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t s_r = 0; s_r < drad; ++s_r)
        for (std::size_t a = 0; a < da; ++a)
          k(static_cast<Eigen::Index>(b * drad + s_r), static_cast<Eigen::Index>(a)) =
              g(static_cast<Eigen::Index>(s_in * drad + s_r), static_cast<Eigen::Index>(a * r + b));
    kraus.emplace_back(std::move(k), out_dims, Dims{da});
  }
  return {std::move(kraus), Dims{da}, out_dims, tol.completeness};
}

struct HpStates {
  std::vector<Operator> xi_w;
  Operator xi_pi;
};

inline HpStates hp_states(const Channel& ch, const OrthoBasis& basis) {
  return {channel_outputs(ch, basis), ch(maximally_mixed(ch.in_dims()))};
}

/// Σ_{i≠j} tr[ρ_i ρ_j].
inline double pairwise_overlap(const std::vector<Operator>& states) {
  double s = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j)
      if (i != j) s += trace_product(states[i], states[j]);
  return s;
}

/// Haar average of Σ_{i≠j} tr[ξ_i ξ_j] over the outputs of the message basis:
/// 2^k(2^k−1)(2^{2(N+k)−ℓ} − 2^ℓ)/(2^{2(N+k)} − 1) · 2^{−H2(ξ)}.
inline double haar_mean_pairwise_overlap(const HpConfig& cfg) {
  const double dk = std::exp2(static_cast<double>(cfg.n_qubits_msg));
  const auto nk = static_cast<double>(cfg.total_qubits());
  const auto l = static_cast<double>(cfg.n_qubits_rad);
  const double num = std::exp2(2.0 * nk - l) - std::exp2(l);
  const double den = std::exp2(2.0 * nk) - 1.0;
  return dk * (dk - 1.0) * num / den * purity(cfg.initial_state);
}

struct Theorem3Bound {
  double cl_bound;
  double q_bound;
  double delta_term;
  double log2_delta;
  double c;
  bool vacuous;
};

/// Evaluates the finite-size classical and quantum error bounds at accuracy ε.
inline Theorem3Bound theorem3_bound(const HpConfig& cfg, double epsilon, const Tolerances& tol = {}) {
  const HpDerived dq = derived_quantities(cfg, tol);
  const double lower = 2.0 * (1.0 - dq.lambda_xi);
  if (!(epsilon > lower && epsilon <= 1.0))
    throw DomainError("theorem3_bound: epsilon must lie in (" + std::to_string(lower) + ", 1]");
  const auto n = static_cast<double>(cfg.n_qubits_bh);
  const auto k = static_cast<double>(cfg.n_qubits_msg);
  const auto l = static_cast<double>(cfg.n_qubits_rad);
  const double c = 1.0 - (1.0 - epsilon / 2.0) / dq.lambda_xi;
  const double log2_delta = k + std::exp2(n + k - l + 1.0) * (n + k - l + std::log2(5.0 / epsilon)) -
                            (c * c * std::numbers::log2e / 6.0) * std::exp2(l + dq.h2_bin);
  const double delta = std::exp2(log2_delta);
  const double cl = std::exp2(2.0 * (dq.ell_th - l)) / (1.0 - epsilon) + delta;
  return {cl, (1.0 + std::numbers::sqrt2) * std::sqrt(cl), delta, log2_delta, c, !(cl < 1.0)};
}

/// Min-eigenvalue statistic: fraction of trials in which some message basis
/// state leaves S_in with λ_min below (1−ε)/2^{N+k−ℓ}.
struct MinEigStats {
  double empirical_fraction;
  double threshold;
  std::size_t trials;
};

/// Reduced state on S_in of U(|j⟩⟨j| ⊗ ξ)U† for every computational |j⟩ of A.
inline std::vector<Operator> s_in_marginals(const Operator& u, const HpConfig& cfg) {
  const std::size_t da = cfg.msg_dim();
  const std::size_t db = std::size_t{1} << cfg.n_qubits_bh;
  const std::size_t drad = std::size_t{1} << cfg.n_qubits_rad;
  const std::size_t din = (da * db) / drad;
  std::vector<Operator> out;
  for (std::size_t j = 0; j < da; ++j) {
    Matrix ket = Matrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    ket(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0;
    const Matrix full = u.matrix() * kron_matrix(ket, cfg.initial_state.matrix()) * u.matrix().adjoint();
    const Operator st(full, Dims{din, drad});
    out.push_back(partial_trace(st, {0}));
  }
  return out;
}

inline MinEigStats min_eig_stats(const HpConfig& cfg, double epsilon, const Tolerances& tol = {}) {
  cfg.validate();
  const HpDerived dq = derived_quantities(cfg, tol);
  if (!(epsilon > 2.0 * (1.0 - dq.lambda_xi) && epsilon <= 1.0))
    throw DomainError("min_eig_stats: epsilon outside the admissible range");
  const double threshold =
      (1.0 - epsilon) / std::exp2(static_cast<double>(cfg.total_qubits() - cfg.n_qubits_rad));
  std::size_t hits = 0;
  const std::size_t ds = std::size_t{1} << cfg.total_qubits();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, t);
    const Operator u = haar_unitary(ds, rng);
    double worst = 1.0;
    for (const auto& m : s_in_marginals(u, cfg)) worst = std::min(worst, eig_hermitian(m, tol).min_eigenvalue());
    if (worst < threshold) ++hits;
  }
  return {static_cast<double>(hits) / static_cast<double>(cfg.trials), threshold, cfg.trials};
}

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed_stream = 0;
  bool ok = true;
  std::string error;

  double delta_cl_x = 0.0;
  double delta_cl_z = 0.0;
  double delta_q = 0.0;
  double lambda_min_x = 0.0;
  double lambda_min_z = 0.0;
  /// Overlap-sum bound per basis, evaluated on this trial's states.
  double prop2_x = 0.0;
  double prop2_z = 0.0;
  double appx_b_x = 0.0;
  double appx_b_z = 0.0;
  /// √(Δ_E(2−Δ_E)) + √Δ_F for the decoder's (E, F) assignment.
  double cor1_bound = 0.0;
  /// Σ_{i≠j} tr[ξ_i ξ_j] over the computational message basis.
  double pairwise_overlap = 0.0;
  /// H2 of ξ_π, then of ξ_{Z,j} and ξ_{X,j}.
  double h2_pi = 0.0;
  std::vector<double> h2_z;
  std::vector<double> h2_x;
  bool ill_conditioned = false;
  /// min_j λ_min of the S_in marginal of U(|j⟩⟨j| ⊗ ξ)U†.
  double lambda_min_s_in = 0.0;

  [[nodiscard]] double lambda_w_min() const { return std::min(lambda_min_x, lambda_min_z); }
  [[nodiscard]] double slack_prop2() const { return std::min(prop2_x - delta_cl_x, prop2_z - delta_cl_z); }
  [[nodiscard]] double slack_cor1() const { return cor1_bound - delta_q; }
};

inline TrialResult run_trial(const HpConfig& cfg, std::size_t t, const Tolerances& tol = {}) {
  TrialResult r;
  r.trial = t;
  r.seed_stream = Rng::stream_seed(cfg.seed, t);
  try {
    Rng rng(r.seed_stream);
    const Operator u = haar_unitary(std::size_t{1} << cfg.total_qubits(), rng);
    const Channel ch = hp_channel(u, cfg.initial_state, cfg, tol);
    r.lambda_min_s_in = 1.0;
    for (const auto& m : s_in_marginals(u, cfg))
      r.lambda_min_s_in = std::min(r.lambda_min_s_in, eig_hermitian(m, tol).min_eigenvalue());
    const OrthoBasis zb(OrthoBasis::pauli(cfg.n_qubits_msg, PauliAxis::Z).unitary(), Dims{cfg.msg_dim()});
    const OrthoBasis xb(OrthoBasis::pauli(cfg.n_qubits_msg, PauliAxis::X).unitary(), Dims{cfg.msg_dim()});
    const PpgmBundle pz = build_ppgm(ch, zb, std::nullopt, tol);
    const PpgmBundle px = build_ppgm(ch, xb, std::nullopt, tol);

    r.delta_cl_z = delta_cl(pz);
    r.delta_cl_x = delta_cl(px);
    r.lambda_min_z = pz.lambda_min;
    r.lambda_min_x = px.lambda_min;
    r.prop2_z = prop2_bound(pz).sum_form;
    r.prop2_x = prop2_bound(px).sum_form;
    r.appx_b_z = appendix_b_bound(pz);
    r.appx_b_x = appendix_b_bound(px);
    r.ill_conditioned = pz.ill_conditioned() || px.ill_conditioned();
    r.pairwise_overlap = pairwise_overlap(pz.tau_states);
    r.h2_pi = collision_entropy(pz.tau_avg);
    for (const auto& s : pz.tau_states) r.h2_z.push_back(collision_entropy(s));
    for (const auto& s : px.tau_states) r.h2_x.push_back(collision_entropy(s));

    const CtoQDecoder dec = cfg.swap_bases ? build_ctoq(px.povm, pz.povm, xb, zb, tol)
                                           : build_ctoq(pz.povm, px.povm, zb, xb, tol);
    r.delta_q = delta_q(dec.total, ch, tol);
    r.cor1_bound = cfg.swap_bases ? theorem1_bound(r.delta_cl_x, r.delta_cl_z, 0.0)
                                  : theorem1_bound(r.delta_cl_z, r.delta_cl_x, 0.0);
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

/// Runs cfg.trials independent trials on `threads` workers; results are in trial order
/// and do not depend on the thread count.
inline std::vector<TrialResult> run_experiment(const HpConfig& cfg, unsigned threads = 1, const Tolerances& tol = {}) {
  cfg.validate();
  std::vector<TrialResult> results(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < cfg.trials; t = next++) results[t] = run_trial(cfg, t, tol);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

// ---------------------------------------------------------------------------
// Ensemble summaries
// ---------------------------------------------------------------------------

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

/// Sample mean and its standard error (sample standard deviation / √n).
inline MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe m;
  m.n = xs.size();
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  if (m.n < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.se = std::sqrt(ss / static_cast<double>(m.n - 1) / static_cast<double>(m.n));
  return m;
}

/// Standard score of `target` against a sample mean. Differences at rounding
/// level count as agreement, so exact-zero ensembles do not divide noise by noise.
inline double z_score(const MeanSe& m, double target) {
  const double diff = m.mean - target;
  if (std::abs(diff) <= 1e-12) return 0.0;
  return m.se > 0.0 ? diff / m.se : std::copysign(kInfinity, diff);
}

struct HpSummary {
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
  MeanSe delta_cl_x;
  MeanSe delta_cl_z;
  /// Per-trial average of the two bases.
  MeanSe delta_cl;
  MeanSe delta_q;
  MeanSe pairwise_overlap;
  double closed_form = 0.0;
  double z_score = 0.0;
  std::size_t prop2_violations = 0;
  std::size_t cor1_violations = 0;
  double worst_prop2_slack = 0.0;
  double worst_cor1_slack = 0.0;
  std::size_t ill_conditioned = 0;
  /// Fraction of trials with lambda_min_s_in below min_eig_threshold (needs ε).
  std::optional<double> min_eig_fraction;
  double min_eig_threshold = 0.0;
  HpDerived derived{};
  std::optional<Theorem3Bound> theorem3;
};

inline constexpr double kBoundSlack = 1e-9;

inline HpSummary summarize(const HpConfig& cfg, const std::vector<TrialResult>& results,
                           std::optional<double> epsilon, const Tolerances& tol = {}) {
  HpSummary s;
  std::vector<double> dx, dz, dm, dq, ov;
  s.worst_prop2_slack = kInfinity;
  s.worst_cor1_slack = kInfinity;
  for (const auto& r : results) {
    if (!r.ok) {
      ++s.n_failed;
      continue;
    }
    ++s.n_ok;
    dx.push_back(r.delta_cl_x);
    dz.push_back(r.delta_cl_z);
    dm.push_back(0.5 * (r.delta_cl_x + r.delta_cl_z));
    dq.push_back(r.delta_q);
    ov.push_back(r.pairwise_overlap);
    s.worst_prop2_slack = std::min(s.worst_prop2_slack, r.slack_prop2());
    s.worst_cor1_slack = std::min(s.worst_cor1_slack, r.slack_cor1());
    if (r.slack_prop2() < -kBoundSlack) ++s.prop2_violations;
    if (r.slack_cor1() < -kBoundSlack) ++s.cor1_violations;
    if (r.ill_conditioned) ++s.ill_conditioned;
  }
  s.delta_cl_x = mean_se(dx);
  s.delta_cl_z = mean_se(dz);
  s.delta_cl = mean_se(dm);
  s.delta_q = mean_se(dq);
  s.pairwise_overlap = mean_se(ov);
  s.closed_form = haar_mean_pairwise_overlap(cfg);
  s.z_score = z_score(s.pairwise_overlap, s.closed_form);
  s.derived = derived_quantities(cfg, tol);
  if (epsilon) {
    try {
      s.theorem3 = theorem3_bound(cfg, *epsilon, tol);
    } catch (const DomainError&) {
      s.theorem3.reset();
    }
    s.min_eig_threshold =
        (1.0 - *epsilon) / std::exp2(static_cast<double>(cfg.total_qubits() - cfg.n_qubits_rad));
    if (s.n_ok > 0) {
      std::size_t hits = 0;
      for (const auto& r : results)
        if (r.ok && r.lambda_min_s_in < s.min_eig_threshold) ++hits;
      s.min_eig_fraction = static_cast<double>(hits) / static_cast<double>(s.n_ok);
    }
  }
  return s;
}

/// Monte-Carlo estimate of the Haar mean of Σ_{i≠j} tr[ξ_i ξ_j] without
/// building decoders.
inline MeanSe sample_pairwise_overlap(const HpConfig& cfg, const Tolerances& tol = {}) {
  cfg.validate();
  std::vector<double> xs;
  xs.reserve(cfg.trials);
  const OrthoBasis zb = OrthoBasis::computational(cfg.msg_dim());
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, t);
    const Operator u = haar_unitary(std::size_t{1} << cfg.total_qubits(), rng);
    xs.push_back(pairwise_overlap(channel_outputs(hp_channel(u, cfg.initial_state, cfg, tol), zb)));
  }
  return mean_se(xs);
}

}  // namespace ctoq
