// Copyright 2026 The Tomocast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "fixtures.hpp"
#include "tomocast/errors.hpp"
#include "tomocast/numkernel.hpp"
#include "tomocast/random.hpp"

namespace tomocast {
namespace {

using testing::diag;
using testing::hs_dist;
constexpr double kPi = std::numbers::pi;

TEST(HsInner, PauliTable) {
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_NEAR(std::abs(hs_inner(id, id) - cdouble(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hs_inner(pauli_x(), pauli_y())), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hs_inner(pauli_x(), pauli_x()) - cdouble(2.0)), 0.0, 1e-15);
}

TEST(HsInner, ConjugateSymmetricAndNormConsistent) {
  Rng rng(3);
  const CMatrix a = random_complex(rng, 4, 4);
  const CMatrix b = random_complex(rng, 4, 4);
  EXPECT_NEAR(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))), 0.0, 1e-12);
  EXPECT_NEAR(hs_inner(a, a).imag(), 0.0, 1e-12);
  EXPECT_NEAR(hs_inner(a, a).real(), hs_norm(a) * hs_norm(a), 1e-10);
}

TEST(HsInner, DimensionMismatchThrows) {
  EXPECT_THROW(hs_inner(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), DimensionError);
}

TEST(HermEig, PauliZ) {
  const HermitianEigen e = herm_eig(pauli_z());
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(HermEig, DegenerateIdentity) {
  const HermitianEigen e = herm_eig(CMatrix::Identity(2, 2));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
  EXPECT_LT(unitarity_residual(e.eigenvectors), 1e-12);
}

TEST(HermEig, PauliXHadamardColumns) {
  const HermitianEigen e = herm_eig(pauli_x());
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(e.eigenvectors(i, j)), std::sqrt(0.5), 1e-14);
  }
}

TEST(HermEig, NonHermitianThrows) {
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(a), HermiticityError);
}

TEST(HermEig, ReconstructionRandom) {
  Rng rng(11);
  for (Eigen::Index d = 1; d <= 8; ++d) {
    const CMatrix h = random_hermitian(rng, d);
    const HermitianEigen e = herm_eig(h);
    const CMatrix rebuilt = e.eigenvectors * e.eigenvalues.cast<cdouble>().asDiagonal() * e.eigenvectors.adjoint();
    EXPECT_LE(hs_dist(rebuilt, h), 1e-11 * h.norm());
    EXPECT_LT(unitarity_residual(e.eigenvectors), 1e-12);
    for (Eigen::Index k = 1; k < d; ++k) EXPECT_LE(e.eigenvalues(k - 1), e.eigenvalues(k));
  }
}

TEST(ExpmIHerm, Examples) {
  EXPECT_LT(hs_dist(expm_i_herm(pauli_z(), kPi), -CMatrix::Identity(2, 2)), 1e-14);
  Rng rng(5);
  const CMatrix h = random_hermitian(rng, 3);
  EXPECT_LT(hs_dist(expm_i_herm(h, 0.0), CMatrix::Identity(3, 3)), 1e-14);
  EXPECT_LT(hs_dist(expm_i_herm(diag({0.0, kPi}), 1.0), diag({1.0, -1.0})), 1e-14);
}

TEST(ExpmIHerm, GroupLawAndUnitarity) {
  Rng rng(17);
  for (Eigen::Index d = 1; d <= 8; ++d) {
    const CMatrix h = random_hermitian(rng, d);
    const double s = rng.uniform() * 3.0 - 1.5;
    const double t = rng.uniform() * 3.0 - 1.5;
    EXPECT_LT(hs_dist(expm_i_herm(h, s) * expm_i_herm(h, t), expm_i_herm(h, s + t)), 1e-10);
    EXPECT_LT(unitarity_residual(expm_i_herm(h, t)), 1e-12);
  }
}

TEST(ExpmIHerm, MatchesTaylorSeries) {
  Rng rng(23);
  const CMatrix h = 0.3 * random_hermitian(rng, 4);
  const double t = 0.7;
  CMatrix term = CMatrix::Identity(4, 4);
  CMatrix sum = term;
  for (int n = 1; n < 40; ++n) {
    term = term * (cdouble(0.0, -t) * h) / static_cast<double>(n);
    sum += term;
  }
  EXPECT_LT(hs_dist(expm_i_herm(h, t), sum), 1e-12);
}

TEST(Kron, IndexConvention) {
  const CMatrix a = diag({1.0, 2.0});
  CMatrix b(2, 2);
  b << 0.0, 1.0, 3.0, 0.0;
  const CMatrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), cdouble(1.0));
  EXPECT_EQ(k(3, 2), cdouble(6.0));
  EXPECT_EQ(k(1, 2), cdouble(0.0));
}

TEST(Random, DeterministicPerSeed) {
  Rng a(99);
  Rng b(99);
  EXPECT_EQ(haar_unitary(a, 3), haar_unitary(b, 3));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Random, HaarUnitaryIsUnitary) {
  Rng rng(1);
  for (Eigen::Index n = 1; n <= 6; ++n) EXPECT_LT(unitarity_residual(haar_unitary(rng, n)), 1e-12);
}

TEST(Random, NormalMoments) {
  Rng rng(8);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

}  // namespace
}  // namespace tomocast
