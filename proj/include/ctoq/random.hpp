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

// Seeded random streams and the random objects built from them: Haar
// unitaries, bases, density operators, channels and POVMs.

#pragma once

#include <cstdint>
#include <random>

#include "ctoq/qcore.hpp"

namespace ctoq {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// A seeded random stream. Independent streams are split off a master seed by
/// counter, so stream t can be regenerated without running streams 0..t−1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  /// Stream `index` derived from `master`.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(stream_seed(master, index));
  }
  static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [lo, hi].
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  /// Complex standard Gaussian entries, E|z|² = 1.
  Matrix ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix g(rows, cols);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) {
        const double re = normal();
        const double im = normal();
        g(r, c) = cplx{s * re, s * im};
      }
    return g;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-distributed d×d unitary: QR of a Ginibre matrix with the phases of
/// R's diagonal moved into Q.
inline Matrix haar_unitary_matrix(std::size_t d, Rng& rng) {
  if (d == 0) throw DomainError("haar_unitary: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  const Matrix z = rng.ginibre(n, n);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx rii = r(i, i);
    const double a = std::abs(rii);
    q.col(i) *= (a > 0.0) ? rii / a : cplx{1.0, 0.0};
  }
  return q;
}

inline Operator haar_unitary(std::size_t d, Rng& rng) {
  return {haar_unitary_matrix(d, rng), Dims{d}};
}

/// Orthonormal columns (d_out × d_in, d_out ≥ d_in) drawn Haar-uniformly.
inline Matrix random_isometry(std::size_t d_out, std::size_t d_in, Rng& rng) {
  if (d_out < d_in) throw DomainError("random_isometry: d_out < d_in");
  return haar_unitary_matrix(d_out, rng).leftCols(static_cast<Eigen::Index>(d_in));
}

inline OrthoBasis random_basis(std::size_t d, Rng& rng) {
  return OrthoBasis(haar_unitary_matrix(d, rng));
}

/// Random density operator of the given rank (Hilbert–Schmidt-type induced measure).
inline Operator random_density(std::size_t d, Rng& rng, std::size_t rank = 0) {
  if (rank == 0 || rank > d) rank = d;
  const Matrix g = rng.ginibre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {std::move(rho), Dims{d}};
}

/// Random CPTP map with `n_kraus` Kraus operators: slices of a Haar isometry
/// d_in → d_out · n_kraus.
inline Channel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus, Rng& rng) {
  if (n_kraus == 0) n_kraus = 1;
  while (d_out * n_kraus < d_in) ++n_kraus;
  const Matrix v = random_isometry(d_out * n_kraus, d_in, rng);
  std::vector<Operator> kraus;
  const auto dout = static_cast<Eigen::Index>(d_out);
  for (std::size_t k = 0; k < n_kraus; ++k)
    kraus.emplace_back(v.middleRows(static_cast<Eigen::Index>(k) * dout, dout), Dims{d_out}, Dims{d_in});
  return {std::move(kraus), Dims{d_in}, Dims{d_out}};
}

/// Convex mixture (1 − p)·first + p·second of two channels with equal dims.
inline Channel mix_channels(const Channel& first, const Channel& second, double p) {
  if (first.in_dims() != second.in_dims() || first.out_dims() != second.out_dims())
    throw DimensionError("mix_channels: dims mismatch");
  std::vector<Operator> kraus;
  for (const auto& k : first.kraus()) kraus.push_back(std::sqrt(1.0 - p) * k);
  for (const auto& k : second.kraus()) kraus.push_back(std::sqrt(p) * k);
  return {std::move(kraus), first.in_dims(), first.out_dims()};
}

/// Random m-outcome POVM: G_j = A_j A_j† from Ginibre A_j, then
/// M_j = S^{-1/2} G_j S^{-1/2} with S = Σ G_j.
inline Povm random_povm(std::size_t d, std::size_t m, Rng& rng, std::size_t rank = 0) {
  if (rank == 0 || rank > d) rank = d;
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Matrix> g;
  Matrix s = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix a = rng.ginibre(n, static_cast<Eigen::Index>(rank));
    g.push_back(a * a.adjoint());
    s += g.back();
  }
  const Operator s_inv_half = func_on_support(Operator(s, Dims{d}), [](double x) { return 1.0 / std::sqrt(x); });
  std::vector<Operator> el;
  for (auto& gj : g) {
    Matrix mj = s_inv_half.matrix() * gj * s_inv_half.matrix();
    mj = 0.5 * (mj + mj.adjoint()).eval();
    el.emplace_back(std::move(mj), Dims{d});
  }
  return Povm(std::move(el));
}

}  // namespace ctoq
