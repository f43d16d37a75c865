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

// Random problem instances for the property suites.

#pragma once

#include <utility>

#include "ctoq/ppgm.hpp"
#include "ctoq/random.hpp"

namespace ctoq {

/// A channel A → C, two decoding POVMs on C and the bases they target.
struct DecodingInstance {
  Channel channel;
  Povm povm_e;
  Povm povm_f;
  OrthoBasis e_basis;
  OrthoBasis f_basis;
};

/// A basis with its subsystem structure flattened to one factor.
inline OrthoBasis flat(const OrthoBasis& b) { return OrthoBasis(b.unitary(), Dims{b.dim()}); }

/// A channel close to an isometric embedding: (1−p)·V·V† + p·(random channel).
inline Channel noisy_isometry_channel(std::size_t d_in, std::size_t d_out, double p, Rng& rng) {
  const Channel iso({Operator(random_isometry(d_out, d_in, rng), Dims{d_out}, Dims{d_in})}, Dims{d_in}, Dims{d_out});
  const Channel noise = random_channel(d_in, d_out, rng.integer(1, 4), rng);
  return mix_channels(iso, noise, p);
}

/// Random A → C channel of one of two kinds: a generic one with 1–4 Kraus
/// operators, or a weakly perturbed isometry.
inline Channel random_test_channel(std::size_t d, std::size_t d_c, Rng& rng) {
  if (rng.uniform() < 0.5) return random_channel(d, d_c, rng.integer(1, 4), rng);
  return noisy_isometry_channel(d, d_c, 0.3 * rng.uniform(), rng);
}

/// Channel A → C with dim C = 2d and at most three Kraus operators, so the
/// output states have partially overlapping, proper supports.
inline Channel low_rank_test_channel(std::size_t d, Rng& rng) {
  const std::size_t dc = 2 * d;
  if (rng.uniform() < 0.5) return random_channel(d, dc, rng.integer(1, 3), rng);
  return mix_channels(random_channel(d, dc, 1, rng), random_channel(d, dc, 1, rng), rng.uniform());
}

/// Decoding POVM for outputs of `channel` in `basis`: the pPGM, a generic random
/// POVM, or a mixture of the two.
inline Povm random_test_povm(const Channel& channel, const OrthoBasis& basis, Rng& rng) {
  const double pick = rng.uniform();
  const std::size_t d = basis.dim();
  const std::size_t dc = channel.out_dim();
  if (pick < 0.25) return random_povm(dc, d, rng);
  const Povm pg = build_ppgm(channel, basis).povm;
  if (pick < 0.6) return pg;
  const Povm noise = random_povm(dc, d, rng);
  const double p = 0.3 * rng.uniform();
  std::vector<Operator> el;
  for (std::size_t j = 0; j < d; ++j) el.push_back((1.0 - p) * pg[j] + p * noise[j].with_dims(pg.dims(), pg.dims()));
  return Povm(std::move(el));
}

/// Generic basis pair: independent Haar bases, or a pair close to mutually unbiased.
inline std::pair<OrthoBasis, OrthoBasis> random_basis_pair(std::size_t d, Rng& rng) {
  const OrthoBasis e = random_basis(d, rng);
  if (rng.uniform() < 0.5) return {e, random_basis(d, rng)};
  const auto n = static_cast<Eigen::Index>(d);
  const Matrix near = OrthoBasis::fourier(d).unitary() + 0.3 * rng.uniform() * rng.ginibre(n, n);
  Eigen::HouseholderQR<Matrix> qr(near);
  const Matrix w = qr.householderQ() * Matrix::Identity(n, n);
  return {e, OrthoBasis(Matrix(e.unitary() * w))};
}

/// Mutually unbiased pair: Pauli Z/X for powers of two, otherwise computational/
/// Fourier, optionally rotated by a common Haar unitary and randomly ordered.
inline std::pair<OrthoBasis, OrthoBasis> random_mub_pair(std::size_t d, Rng& rng) {
  Matrix e, f;
  const bool pow2 = (d & (d - 1)) == 0;
  if (pow2 && rng.uniform() < 0.5) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) ++n;
    e = OrthoBasis::pauli(n, PauliAxis::Z).unitary();
    f = OrthoBasis::pauli(n, PauliAxis::X).unitary();
  } else {
    e = OrthoBasis::computational(d).unitary();
    f = OrthoBasis::fourier(d).unitary();
  }
  if (rng.uniform() < 0.5) {
    const Matrix u = haar_unitary_matrix(d, rng);
    e = u * e;
    f = u * f;
  }
  if (rng.uniform() < 0.5) std::swap(e, f);
  return {OrthoBasis(e), OrthoBasis(f)};
}

/// Output dimension of C for an input of dimension d: d or d + 1.
inline std::size_t random_output_dim(std::size_t d, Rng& rng) { return d + rng.integer(0, 1); }

inline DecodingInstance random_decoding_instance(std::size_t d, Rng& rng, bool mub) {
  auto [e, f] = mub ? random_mub_pair(d, rng) : random_basis_pair(d, rng);
  Channel ch = random_test_channel(d, random_output_dim(d, rng), rng);
  Povm pe = random_test_povm(ch, e, rng);
  Povm pf = random_test_povm(ch, f, rng);
  return {std::move(ch), std::move(pe), std::move(pf), std::move(e), std::move(f)};
}

/// A channel that is block diagonal in E: |j_E⟩ is sent into its own block
/// H_j of C (dim C = d·m), with Kraus operators K_k = Σ_j B_kj ⟨j_E|.
/// The returned POVM projects onto the blocks, so Δ_cl,E = 0.
struct BlockInstance {
  Channel channel;
  Povm povm_e;
  OrthoBasis e_basis;
};

inline BlockInstance random_block_instance(std::size_t d, std::size_t block, std::size_t n_kraus, Rng& rng) {
  const OrthoBasis e = random_basis(d, rng);
  const auto m = static_cast<Eigen::Index>(block);
  const auto dc = static_cast<Eigen::Index>(d * block);
  std::vector<Matrix> ks(n_kraus, Matrix::Zero(dc, static_cast<Eigen::Index>(d)));
  for (std::size_t j = 0; j < d; ++j) {
    Vector col = rng.ginibre(m * static_cast<Eigen::Index>(n_kraus), 1).col(0);
    col.normalize();
    for (std::size_t k = 0; k < n_kraus; ++k)
      ks[k].block(static_cast<Eigen::Index>(j) * m, 0, m, static_cast<Eigen::Index>(d)) =
          col.segment(static_cast<Eigen::Index>(k) * m, m) * e.vector(j).adjoint();
  }
  std::vector<Operator> kraus;
  for (auto& k : ks) kraus.emplace_back(std::move(k), Dims{static_cast<std::size_t>(dc)}, Dims{d});
  Channel ch(std::move(kraus), Dims{d}, Dims{static_cast<std::size_t>(dc)});
  std::vector<Operator> el;
  for (std::size_t j = 0; j < d; ++j) {
    Matrix p = Matrix::Zero(dc, dc);
    p.block(static_cast<Eigen::Index>(j) * m, static_cast<Eigen::Index>(j) * m, m, m).setIdentity();
    el.emplace_back(std::move(p), Dims{static_cast<std::size_t>(dc)});
  }
  return {std::move(ch), Povm(std::move(el)), e};
}

/// A decoder C → A that approximately inverts `iso` (a V† recovery with the
/// orthogonal complement sent to |0⟩), mixed with a random channel.
inline Channel noisy_recovery(const Matrix& iso, double p, Rng& rng) {
  const auto dc = iso.rows();
  const auto d = iso.cols();
  std::vector<Operator> kraus{Operator(iso.adjoint(), Dims{static_cast<std::size_t>(d)},
                                       Dims{static_cast<std::size_t>(dc)})};
  const Matrix comp = Matrix::Identity(dc, dc) - iso * iso.adjoint();
  // |0⟩⟨c| restricted to the complement, one Kraus operator per complement column
  const Eigen::SelfAdjointEigenSolver<Matrix> es(comp);
  for (Eigen::Index i = 0; i < dc; ++i) {
    if (es.eigenvalues()(i) < 0.5) continue;
    Matrix ki = Matrix::Zero(d, dc);
    ki.row(0) = es.eigenvectors().col(i).adjoint();
    kraus.emplace_back(std::move(ki), Dims{static_cast<std::size_t>(d)}, Dims{static_cast<std::size_t>(dc)});
  }
  const Channel rec(std::move(kraus), Dims{static_cast<std::size_t>(dc)}, Dims{static_cast<std::size_t>(d)});
  return mix_channels(rec, random_channel(static_cast<std::size_t>(dc), static_cast<std::size_t>(d), rng.integer(1, 4), rng), p);
}

/// Channel T = (1−p)·(isometry) + p·(noise) and a noisy recovery decoder for it.
struct ReferenceDecoderInstance {
  Channel channel;
  Channel decoder;
  OrthoBasis e_basis;
  OrthoBasis f_basis;
};

inline ReferenceDecoderInstance random_reference_decoder_instance(std::size_t d, Rng& rng) {
  const std::size_t dc = random_output_dim(d, rng);
  const Matrix iso = random_isometry(dc, d, rng);
  const Channel clean({Operator(iso, Dims{dc}, Dims{d})}, Dims{d}, Dims{dc});
  const Channel ch = mix_channels(clean, random_channel(d, dc, rng.integer(1, 4), rng), 0.3 * rng.uniform());
  Channel dec = noisy_recovery(iso, 0.3 * rng.uniform(), rng);
  auto [e, f] = random_mub_pair(d, rng);
  return {ch, std::move(dec), std::move(e), std::move(f)};
}

}  // namespace ctoq
