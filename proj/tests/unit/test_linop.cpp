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
#include <vector>

#include <gtest/gtest.h>

#include "ctoq/qcore.hpp"
#include "ctoq/random.hpp"

namespace ctoq {
namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator random_hermitian(std::size_t d, Rng& rng) {
  const Matrix g = rng.ginibre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  return {g + g.adjoint(), Dims{d}};
}

TEST(Operator, RejectsInconsistentDims) {
  EXPECT_THROW(Operator(Matrix::Identity(4, 4), Dims{2, 3}), DimensionError);
  EXPECT_THROW(Operator(Matrix::Identity(2, 2), Dims{}), DimensionError);
  EXPECT_THROW(Operator(Matrix::Identity(2, 2), Dims{0, 2}), DimensionError);
  EXPECT_NO_THROW(Operator(Matrix::Identity(4, 4), Dims{2, 2}));
}

TEST(Operator, ProductChecksDims) {
  const Operator a(Matrix::Identity(2, 2), Dims{2});
  const Operator b(Matrix::Identity(3, 3), Dims{3});
  EXPECT_THROW(a * b, DimensionError);
  EXPECT_THROW(a + b, DimensionError);
}

TEST(Kron, IdentityCase) {
  const Operator i2 = Operator::identity(Dims{2});
  const Operator i4 = kron(i2, i2);
  EXPECT_TRUE(i4.matrix().isApprox(Matrix::Identity(4, 4)));
  EXPECT_EQ(i4.row_dims(), (Dims{2, 2}));
}

TEST(Kron, DimsBookkeeping) {
  const Operator a(Matrix::Zero(2, 3), Dims{2}, Dims{3});
  const Operator b(Matrix::Zero(2, 1), Dims{2}, Dims{1});
  const Operator c = kron(a, b);
  EXPECT_EQ(c.row_dims(), (Dims{2, 2}));
  EXPECT_EQ(c.col_dims(), (Dims{3, 1}));
}

TEST(Kron, PauliXTensorPauliZ) {
  const Matrix m = kron_matrix(pauli_x(), pauli_z());
  Matrix want = Matrix::Zero(4, 4);
  want(0, 2) = 1.0;
  want(1, 3) = -1.0;
  want(2, 0) = 1.0;
  want(3, 1) = -1.0;
  EXPECT_TRUE(m.isApprox(want));
}

TEST(PartialTrace, ProductState) {
  Rng rng(1);
  const Operator rho = random_density(2, rng);
  const Operator sigma = random_density(3, rng);
  const Operator red = partial_trace(kron(rho, sigma), {0});
  EXPECT_LT((red.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  const Operator red2 = partial_trace(kron(rho, sigma), {1});
  EXPECT_LT((red2.matrix() - sigma.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, MaxEntangledMarginalIsMaximallyMixed) {
  const Operator red = partial_trace(max_entangled(2), {0});
  EXPECT_LT((red.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, MatchesBruteForceIndexSum) {
  Rng rng(2);
  const Operator rho = random_density(12, rng).with_dims(Dims{2, 3, 2}, Dims{2, 3, 2});
  const Operator red = partial_trace(rho, {0, 2});
  Matrix want = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 3; ++b) want(a * 2 + c, a2 * 2 + c2) += rho(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
  EXPECT_LT((red.matrix() - want).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(red.trace().real(), rho.trace().real(), 1e-12);
  EXPECT_NEAR(partial_trace(rho, {}).trace().real(), 1.0, 1e-12);
  EXPECT_THROW(partial_trace(rho, {3}), DomainError);
}

TEST(PermuteSystems, SwapsFactors) {
  Rng rng(3);
  const Operator a = random_density(2, rng);
  const Operator b = random_density(3, rng);
  const Operator swapped = permute_systems(kron(a, b), {1, 0});
  EXPECT_EQ(swapped.row_dims(), (Dims{3, 2}));
  EXPECT_LT((swapped.matrix() - kron(b, a).matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EigHermitian, KnownSpectra) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const HermitianEig e = eig_hermitian(Operator(d, Dims{2}));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 3.0, 1e-15);
  EXPECT_NEAR(std::abs(e.eigenvectors(0, 0)), 1.0, 1e-15);
  const HermitianEig x = eig_hermitian(Operator(pauli_x(), Dims{2}));
  EXPECT_NEAR(x.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(x.eigenvalues(1), 1.0, 1e-15);
}

TEST(EigHermitian, ReconstructsRandomHermitian) {
  Rng rng(4);
  const Operator a = random_hermitian(6, rng);
  const HermitianEig e = eig_hermitian(a);
  const Matrix& v = e.eigenvectors.matrix();
  const Matrix rec = v * e.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint();
  EXPECT_LE((rec - a.matrix()).cwiseAbs().maxCoeff(), 1e-10 * a.matrix().cwiseAbs().maxCoeff());
  EXPECT_LE(isometry_defect(v), 1e-10);
}

TEST(EigHermitian, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(Operator(m, Dims{2})), NumericalError);
  EXPECT_THROW(eig_hermitian(Operator(Matrix::Zero(2, 3), Dims{2}, Dims{3})), DimensionError);
}

TEST(SchattenNorm, Examples) {
  EXPECT_NEAR(schatten_norm(Operator::identity(Dims{5}), 1.0), 5.0, 1e-14);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  const Operator op(d, Dims{2});
  EXPECT_NEAR(schatten_norm(op, 1.0), 7.0, 1e-14);
  EXPECT_NEAR(schatten_norm(op, kInfinity), 4.0, 1e-14);
  Rng rng(5);
  const Operator a(rng.ginibre(4, 4), Dims{4});
  EXPECT_NEAR(std::pow(schatten_norm(a, 2.0), 2), (a.matrix().adjoint() * a.matrix()).trace().real(), 1e-10);
  EXPECT_THROW(schatten_norm(a, 0.5), DomainError);
}

TEST(TraceDistance, Examples) {
  Rng rng(6);
  const Operator rho = random_density(3, rng);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-15);
  const Operator p0 = OrthoBasis::computational(2).projector(0);
  const Operator p1 = OrthoBasis::computational(2).projector(1);
  EXPECT_NEAR(trace_distance(p0, p1), 1.0, 1e-15);
  // 1 − 1/d² once and −1/d² three times: ½(3/4 + 3/4) = 3/4.
  const Operator mixed = maximally_mixed(Dims{2, 2});
  EXPECT_NEAR(trace_distance(max_entangled(2), mixed), 0.75, 1e-14);
  EXPECT_THROW(trace_distance(p0, rho), DimensionError);
}

TEST(Fidelity, Examples) {
  Rng rng(7);
  const Operator rho = random_density(3, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  const auto basis = OrthoBasis::computational(3);
  EXPECT_NEAR(fidelity(basis.projector(0), basis.projector(2)), 0.0, 1e-14);
  const Vector psi = random_isometry(3, 1, rng).col(0);
  const Operator pure = Operator::projector(psi, Dims{3});
  const double want = (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
  EXPECT_NEAR(fidelity(pure, rho), want, 1e-9);
  EXPECT_NEAR(fidelity(rho, pure), want, 1e-9);
}

TEST(FuncOnSupport, Examples) {
  auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
  const Operator i3 = Operator::identity(Dims{3});
  EXPECT_LT((func_on_support(i3, inv_sqrt).matrix() - i3.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  const Operator out = func_on_support(Operator(d, Dims{2}), inv_sqrt);
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(out(1, 1)), 0.0, 1e-15);
}

TEST(FuncOnSupport, SandwichGivesSupportProjector) {
  Rng rng(8);
  const Matrix g = rng.ginibre(5, 3);
  const Operator pi(g * g.adjoint(), Dims{5});
  const Operator s = func_on_support(pi, [](double x) { return 1.0 / std::sqrt(x); });
  const Matrix got = s.matrix() * pi.matrix() * s.matrix();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ() * Matrix::Identity(5, 3);
  EXPECT_LT((got - q * q.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FuncOnSupport, RejectsNegativeOperators) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.1;
  EXPECT_THROW(func_on_support(Operator(d, Dims{2}), [](double x) { return x; }), NumericalError);
  EXPECT_THROW(sqrt_psd(Operator(d, Dims{2})), NumericalError);
}

}  // namespace
}  // namespace ctoq
