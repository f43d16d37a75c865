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


#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ctoq/ctoq.hpp"
#include "ctoq/instances.hpp"
#include "ctoq/random.hpp"

namespace ctoq {
namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

OrthoBasis zb() { return OrthoBasis::pauli(1, PauliAxis::Z); }
OrthoBasis xb() { return OrthoBasis::pauli(1, PauliAxis::X); }

/// ρ ↦ (1−p)ρ + p ZρZ.
Channel z_dephasing(double p) {
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  return {{std::sqrt(1.0 - p) * Operator::identity(Dims{2}), Operator(std::sqrt(p) * z, Dims{2})}, Dims{2}, Dims{2}};
}

Povm trine() {
  std::vector<Operator> el;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    Vector v(2);
    v << std::cos(a / 2.0), std::sin(a / 2.0);
    el.push_back((2.0 / 3.0) * Operator::projector(v, Dims{2}));
  }
  return Povm(std::move(el));
}

TEST(DeltaQ, Examples) {
  const Channel id = Channel::identity(Dims{2});
  EXPECT_NEAR(delta_q(id, id), 0.0, 1e-14);
  EXPECT_NEAR(delta_q(id, Channel::fully_depolarizing(Dims{2}, Dims{2})), 0.75, 1e-14);
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    const Channel t = random_channel(3, 4, 2, rng);
    const Channel d = random_channel(4, 3, 2, rng);
    const double v = delta_q(d, t);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
  EXPECT_THROW(delta_q(id, random_channel(2, 3, 1, rng)), DimensionError);
}

TEST(DeltaCl, Examples) {
  Rng rng(2);
  const OrthoBasis w = random_basis(3, rng);
  EXPECT_NEAR(delta_cl(Povm::projective(w), Channel::identity(Dims{3}), w), 0.0, 1e-14);
  const Channel to_pi = Channel::fully_depolarizing(Dims{3}, Dims{3});
  EXPECT_NEAR(delta_cl(random_povm(3, 3, rng), to_pi, w), 2.0 / 3.0, 1e-13);
  EXPECT_THROW(delta_cl(random_povm(3, 2, rng), to_pi, w), DimensionError);
}

TEST(DeltaCl, SumFormEqualsTraceNormForm) {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    const DecodingInstance in = random_decoding_instance(d, rng, i % 2 == 0);
    EXPECT_NEAR(delta_cl(in.povm_e, in.channel, in.e_basis), delta_cl_trace_norm(in.povm_e, in.channel, in.e_basis),
                1e-10);
  }
}

TEST(Naimark, ProjectiveAndTrine) {
  Rng rng(4);
  const OrthoBasis w = random_basis(3, rng);
  const Povm proj = Povm::projective(w);
  const NaimarkExtension e = naimark_extend(proj);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_LT(max_abs(e.isometry.matrix().adjoint() * e.projections[j].matrix() * e.isometry.matrix() -
                      proj[j].matrix()),
              1e-14);
  const Povm t = trine();
  const NaimarkExtension et = naimark_extend(t);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_LT(max_abs(et.isometry.matrix().adjoint() * et.projections[j].matrix() * et.isometry.matrix() -
                      t[j].matrix()),
              1e-12);
  const NaimarkExtension er = naimark_extend(random_povm(4, 3, rng));
  EXPECT_LE(isometry_defect(er.isometry.matrix()), 1e-9);
  Matrix sum = Matrix::Zero(12, 12);
  for (const auto& p : er.projections) {
    EXPECT_LT(max_abs(p.matrix() * p.matrix() - p.matrix()), 1e-15);
    sum += p.matrix();
  }
  EXPECT_LT(max_abs(sum - Matrix::Identity(12, 12)), 1e-15);
}

TEST(VInv, Examples) {
  // One-outcome POVM {I}: V is unitary and the complement term vanishes.
  const NaimarkExtension u = naimark_extend(Povm({Operator::identity(Dims{2})}));
  const Vector e0 = default_e0(u);
  const Operator vi = build_v_inv(u, e0, default_e0_prime(u));
  EXPECT_LT(max_abs(vi.matrix() - kron_matrix(u.isometry.matrix().adjoint(), Matrix(e0))), 1e-14);

  Rng rng(5);
  const NaimarkExtension ext = naimark_extend(random_povm(3, 3, rng));
  const Vector r0 = default_e0(ext);
  const Operator v_inv = build_v_inv(ext, r0, default_e0_prime(ext));
  EXPECT_LE(isometry_defect(v_inv.matrix()), 1e-9);
  const Vector c = random_isometry(3, 1, rng).col(0);
  const Vector got = v_inv.matrix() * (ext.isometry.matrix() * c);
  EXPECT_LT((got - kron_vector(c, r0)).norm(), 1e-12);

  Vector outside = Vector::Zero(9);
  outside(1) = 1.0;
  const Matrix q = Matrix::Identity(9, 9) - ext.isometry.matrix() * ext.isometry.matrix().adjoint();
  const Vector off_range = (q * rng.ginibre(9, 1)).col(0).normalized();
  EXPECT_THROW(build_v_inv(ext, off_range, default_e0_prime(ext)), DomainError);
}

TEST(CoherentMeasurement, IdentityChannelGivesGhz) {
  for (std::size_t d : {2u, 3u}) {
    Rng rng(6 + d);
    const OrthoBasis e = random_basis(d, rng);
    const Channel id = Channel::identity(Dims{d});
    const Channel r = build_coherent_measurement(naimark_extend(Povm::projective(e)), e);
    EXPECT_LE(r.tp_defect(), 1e-9);
    const Operator got = coherent_measurement_output(r, id);
    const Operator want = noisy_ghz_state(id, e);
    EXPECT_LT(trace_distance(got, want), 1e-12);
  }
}

TEST(CoherentMeasurement, OutcomeRegisterCarriesPovmStatistics) {
  Rng rng(9);
  const Povm m = random_povm(3, 2, rng);
  const OrthoBasis e = random_basis(2, rng);
  const Channel r = build_coherent_measurement(naimark_extend(m), e);
  const Operator rho = random_density(3, rng);
  const Operator out = r(rho);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  const Operator a = partial_trace(out, {1});
  const Matrix in_e = e.unitary().adjoint() * a.matrix() * e.unitary();
  for (std::size_t j = 0; j < 2; ++j)
    EXPECT_NEAR(in_e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real(),
                (rho.matrix() * m[j].matrix()).trace().real(), 1e-12);
  EXPECT_LT(std::abs(in_e(0, 1)), 1e-12);
}

TEST(Theta, QubitZX) {
  const Operator t0 = build_theta(zb(), xb(), 0);
  const Operator t1 = build_theta(zb(), xb(), 1);
  EXPECT_LT(max_abs(t0.matrix() - Matrix::Identity(2, 2)), 1e-15);
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  EXPECT_LT(max_abs(t1.matrix() - z), 1e-15);
}

TEST(Theta, UnitaryAndDiagonalInE) {
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    const OrthoBasis e = random_basis(4, rng);
    const OrthoBasis f = random_basis(4, rng);
    for (std::size_t l = 0; l < 4; ++l) {
      const Operator t = build_theta(e, f, l);
      EXPECT_LE(isometry_defect(t.matrix()), 1e-12);
      Matrix in_e = e.unitary().adjoint() * t.matrix() * e.unitary();
      in_e.diagonal().setZero();
      EXPECT_LT(max_abs(in_e), 1e-12);
    }
  }
  // Equal bases: zero overlaps take phase 1, so every Θ_l is the identity.
  const OrthoBasis e = OrthoBasis::computational(3);
  EXPECT_LT(max_abs(build_theta(e, e, 1).matrix() - Matrix::Identity(3, 3)), 1e-15);
  EXPECT_THROW(build_theta(e, e, 3), DomainError);
}

TEST(Eraser, Examples) {
  Rng rng(11);
  const std::vector<Operator> one{Operator::identity(Dims{2})};
  const Channel tr_c = build_eraser(Povm({Operator::identity(Dims{3})}), one);
  const Operator st = random_density(6, rng).with_dims(Dims{3, 2}, Dims{3, 2});
  EXPECT_LT(max_abs(tr_c(st).matrix() - partial_trace(st, {1}).matrix()), 1e-14);

  const OrthoBasis e = random_basis(2, rng);
  const OrthoBasis f = random_basis(2, rng);
  const auto thetas = build_thetas(e, f);
  const Channel q = build_eraser(Povm::projective(f), thetas);
  EXPECT_LE(q.tp_defect(), 1e-9);
  const Operator rho = random_density(2, rng);
  const Operator out = q(kron(f.projector(1), rho));
  const Matrix want = thetas[1].matrix() * rho.matrix() * thetas[1].matrix().adjoint();
  EXPECT_LT(max_abs(out.matrix() - want), 1e-13);
  EXPECT_THROW(build_eraser(Povm::projective(f), std::vector<Operator>{thetas[0]}), DimensionError);
}

TEST(Eraser, SlicingBasisDoesNotMatter) {
  Rng rng(12);
  const Povm m = random_povm(3, 2, rng);
  const auto thetas = build_thetas(random_basis(2, rng), random_basis(2, rng));
  const Channel q = build_eraser(m, thetas);
  const Matrix u = haar_unitary_matrix(3, rng);
  std::vector<Operator> kraus;
  for (std::size_t l = 0; l < 2; ++l) {
    const Matrix root = sqrt_psd(m[l]).matrix();
    for (Eigen::Index b = 0; b < 3; ++b)
      kraus.emplace_back(kron_matrix(u.col(b).adjoint() * root, thetas[l].matrix()), Dims{2}, Dims{3, 2});
  }
  const Channel rotated(std::move(kraus), Dims{3, 2}, Dims{2});
  EXPECT_LT(max_abs(q.choi().matrix() - rotated.choi().matrix()), 1e-12);
}

TEST(BuildCtoq, IdentityChannelIsPerfect) {
  const CtoQDecoder dec = build_ctoq(Povm::projective(zb()), Povm::projective(xb()), zb(), xb());
  EXPECT_NEAR(delta_q(dec.total, Channel::identity(Dims{2})), 0.0, 1e-9);
}

TEST(BuildCtoq, DephasingMatchesLiteralReference) {
  // Reference values from an independent literal construction of the decoder.
  const CtoQDecoder dec = build_ctoq(Povm::projective(zb()), Povm::projective(xb()), zb(), xb());
  for (double p : {0.1, 0.3, 0.5}) {
    const Channel t = z_dephasing(p);
    EXPECT_NEAR(delta_q(dec.total, t), p, 1e-12);
  }
  const Channel full = z_dephasing(0.5);
  const ErrorReport r = theorem1_report(full, Povm::projective(zb()), Povm::projective(xb()), zb(), xb());
  EXPECT_NEAR(r.delta_cl_e, 0.0, 1e-14);
  EXPECT_NEAR(r.delta_cl_f, 0.5, 1e-14);
  EXPECT_NEAR(r.xi_ef, 0.0, 1e-14);
  EXPECT_NEAR(r.bound_thm1, std::sqrt(0.5), 1e-12);
  EXPECT_LE(r.delta_q, r.bound_thm1);
}

TEST(BuildCtoq, StructuredTotalEqualsStagedComposition) {
  Rng rng(13);
  for (int i = 0; i < 12; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    const DecodingInstance in = random_decoding_instance(d, rng, i % 2 == 0);
    const CtoQDecoder dec = build_ctoq(in.povm_e, in.povm_f, in.e_basis, in.f_basis);
    const Channel staged = dec.staged_total();
    EXPECT_LT(max_abs(dec.total.choi().matrix() - staged.choi().matrix()), 1e-9);
    EXPECT_LE(dec.total.kraus().size(), dec.total.in_dim() * dec.total.out_dim());
    EXPECT_LE(dec.coherent_measurement().tp_defect(), 1e-9);
    EXPECT_LE(dec.eraser().tp_defect(), 1e-9);
  }
}

TEST(XiEf, Examples) {
  Rng rng(14);
  const Channel t = random_channel(2, 3, 2, rng);
  const Povm pf = random_povm(3, 2, rng);
  EXPECT_NEAR(xi_ef(t, pf, zb(), xb()), 0.0, 1e-12);
  const XiBounds mub = xi_bounds(t, pf, zb(), xb());
  EXPECT_NEAR(mub.eq15, 0.0, 1e-12);
  EXPECT_NEAR(mub.eq17, 0.0, 1e-12);

  const OrthoBasis e = random_basis(3, rng);
  const Channel id = Channel::identity(Dims{3});
  EXPECT_NEAR(xi_ef(id, Povm::projective(e), e, e), 2.0 / 3.0, 1e-12);
  const XiBounds same = xi_bounds(id, Povm::projective(e), e, e);
  EXPECT_NEAR(same.eq17, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(same.eq15, 2.0 / 3.0, 1e-12);
}

TEST(DecoderBound, IdentityMubProjectiveIsAllZero) {
  const ErrorReport r = theorem1_report(Channel::identity(Dims{3}), Povm::projective(OrthoBasis::computational(3)),
                                        Povm::projective(OrthoBasis::fourier(3)), OrthoBasis::computational(3),
                                        OrthoBasis::fourier(3));
  for (double v : {r.delta_q, r.delta_cl_e, r.delta_cl_f, r.xi_ef, r.bound_thm1, r.bound_eq15, r.bound_eq17})
    EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(DecoderBound, BothOrderingsAreReported) {
  Rng rng(15);
  const DecodingInstance in = random_decoding_instance(3, rng, false);
  const auto [ef, fe] = theorem1_report_both_orders(in.channel, in.povm_e, in.povm_f, in.e_basis, in.f_basis);
  EXPECT_EQ(ef.delta_cl_e, fe.delta_cl_f);
  EXPECT_NE(ef.bound_thm1, fe.bound_thm1);
  EXPECT_LE(ef.delta_q, ef.bound_thm1 + 1e-9);
  EXPECT_LE(fe.delta_q, fe.bound_thm1 + 1e-9);
}

TEST(PovmFromDecoder, Examples) {
  Rng rng(16);
  const OrthoBasis w = random_basis(3, rng);
  const Povm p = povm_from_decoder(Channel::identity(Dims{3}), w);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(max_abs(p[j].matrix() - w.projector(j).matrix()), 1e-14);
  for (int i = 0; i < 10; ++i) {
    const Channel t = random_channel(3, 4, 2, rng);
    const Channel d = random_channel(4, 3, 3, rng);
    const Povm m = povm_from_decoder(d, w);
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto& el : m.elements()) sum += el.matrix();
    EXPECT_LT(max_abs(sum - Matrix::Identity(4, 4)), 1e-9);
    EXPECT_LE(delta_cl(m, t, w), delta_q(d, t) + 1e-10);
  }
}

TEST(NoisyGhz, Examples) {
  const Operator ghz = noisy_ghz_state(Channel::identity(Dims{2}), OrthoBasis::computational(2));
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  EXPECT_LT(max_abs(ghz.matrix() - v * v.adjoint()), 1e-15);
  Rng rng(17);
  const Operator noisy = noisy_ghz_state(random_channel(3, 2, 3, rng), random_basis(3, rng));
  EXPECT_NEAR(noisy.trace().real(), 1.0, 1e-13);
  EXPECT_EQ(noisy.row_dims(), (Dims{3, 2, 3}));
}

}  // namespace
}  // namespace ctoq
