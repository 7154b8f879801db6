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
#include "tomocast/distributions.hpp"
#include "tomocast/errors.hpp"
#include "tomocast/hamiltonian.hpp"
#include "tomocast/rational.hpp"

namespace tomocast {
namespace {

using testing::diag;
using testing::hs_dist;
constexpr double kPi = std::numbers::pi;

AdmissibleHamiltonian extract(const TomographySet &set, BlockDecomposition *decomp_out = nullptr) {
  const BlockDecomposition decomp = shared_eigenspaces(set);
  if (decomp_out != nullptr) *decomp_out = decomp;
  return extract_min_norm_hamiltonian(decomp, rationalize(set.times), set.times);
}

TEST(ExtractMinNorm, PrincipalBranchTieGoesPositive) {
  const AdmissibleHamiltonian h = extract(make_tomography({1.0}, {diag({1.0, -1.0})}));
  ASSERT_EQ(h.block_energies.size(), 2u);
  EXPECT_NEAR(h.block_energies[0], 0.0, 1e-12);
  EXPECT_NEAR(h.block_energies[1], kPi, 1e-12);
  EXPECT_LT(hs_dist(h.matrix, diag({0.0, kPi})), 1e-12);
  EXPECT_DOUBLE_EQ(h.gamma, 1.0);
}

TEST(ExtractMinNorm, IdentityGivesZero) {
  const AdmissibleHamiltonian h = extract(make_tomography({1.0}, {CMatrix::Identity(2, 2)}));
  ASSERT_EQ(h.block_energies.size(), 1u);
  EXPECT_NEAR(h.block_energies[0], 0.0, 1e-12);
  EXPECT_LT(h.matrix.norm(), 1e-12);
}

TEST(ExtractMinNorm, SigmaZGenerated) {
  const CMatrix h0 = diag({0.3, -0.3});
  const TomographySet set = make_tomography({1.0, 2.0}, {expm_i_herm(h0, 1.0), expm_i_herm(h0, 2.0)});
  const AdmissibleHamiltonian h = extract(set);
  ASSERT_EQ(h.block_energies.size(), 2u);
  EXPECT_NEAR(h.block_energies[0], 0.3, 1e-12);
  EXPECT_NEAR(h.block_energies[1], -0.3, 1e-12);
}

TEST(ExtractMinNorm, InconsistentThrows) {
  const TomographySet set = make_tomography({1.0, 2.0}, {CMatrix::Identity(2, 2), diag({1.0, -1.0})});
  const BlockDecomposition decomp = shared_eigenspaces(set);
  EXPECT_THROW(extract_min_norm_hamiltonian(decomp, rationalize(set.times), set.times),
               NotConsistentError);
}

TEST(ExtractMinNorm, RecoversSynthesizedEnergiesInWindow) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.bits() % 6);
    auto s = testing::random_consistent_set(rng, d, 1 + rng.bits() % 3);
    const RationalStructure rs = rationalize(s.set.times);
    ASSERT_TRUE(rs.rational);
    // Fold the generator into the fundamental window so it is the unique
    // minimal-norm branch.
    for (double &e : s.energies) e = reduce_half_open(e, 2.0 * kPi * rs.gamma);
    s.set = testing::synthesize(s.basis, s.dims, s.energies, s.set.times);
    BlockDecomposition decomp;
    const AdmissibleHamiltonian h = extract(s.set, &decomp);
    ASSERT_EQ(decomp.kappa(), s.dims.size());
    for (std::size_t i = 0; i < decomp.kappa(); ++i) {
      bool matched = false;
      for (double e : s.energies) matched = matched || std::abs(e - h.block_energies[i]) < 1e-9;
      EXPECT_TRUE(matched) << "block " << i;
      EXPECT_GT(h.block_energies[i], -kPi * rs.gamma);
      EXPECT_LE(h.block_energies[i], kPi * rs.gamma);
    }
    EXPECT_LT(hs_dist(h.matrix, testing::block_hamiltonian(s.basis, s.dims, s.energies)), 1e-9);
    const auto rep = verify_admissible(h.matrix, s.set, default_admissibility_tol(d));
    EXPECT_TRUE(rep.ok);
  }
}

TEST(ExtractMinNorm, ChosenBranchHasSmallestNormAmongPassing) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_consistent_set(rng, 4, 1 + rng.bits() % 3);
    const BlockDecomposition decomp = shared_eigenspaces(s.set);
    const RationalStructure rs = rationalize(s.set.times);
    const AdmissibleHamiltonian h = extract_min_norm_hamiltonian(decomp, rs, s.set.times);
    for (std::size_t i = 0; i < decomp.kappa(); ++i) {
      const auto cands = enumerate_branches(decomp.blocks[i].phases, s.set.times, rs);
      EXPECT_EQ(static_cast<std::int64_t>(cands.size()), rs.lcm_q);
      for (const BranchCandidate &c : cands) {
        if (c.residual <= 1e-8) EXPECT_GE(std::abs(c.energy), std::abs(h.block_energies[i]) - 1e-12);
      }
    }
  }
}

TEST(ExtractMinNorm, IrrationalTimesUseResidualSearch) {
  const CMatrix h0 = diag({0.3, -0.5});
  const std::vector<double> times{1.0, std::sqrt(2.0)};
  const TomographySet set = make_tomography(times, {expm_i_herm(h0, times[0]), expm_i_herm(h0, times[1])});
  const AdmissibleHamiltonian h = extract(set);
  EXPECT_FALSE(h.rational);
  EXPECT_LT(hs_dist(h.matrix, h0), 1e-10);
}

TEST(ChooseBranch, FallsBackToSmallestResidual) {
  const std::vector<BranchCandidate> cands{{1.0, 0.5}, {-0.5, 0.2}, {2.0, 0.3}};
  const BranchChoice c = choose_branch(cands, true, 1e-8);
  EXPECT_FALSE(c.passed);
  EXPECT_DOUBLE_EQ(c.branch.energy, -0.5);
}

TEST(SampleAdmissible, DeltaPriorGivesHhat) {
  const TomographySet set = make_tomography({1.0}, {diag({1.0, -1.0})});
  BlockDecomposition decomp;
  const AdmissibleHamiltonian h = extract(set, &decomp);
  const auto e = sample_admissible(h, decomp, PriorDistribution::delta(), 3);
  EXPECT_LT(hs_dist(e.matrix, h.matrix), 1e-14);
}

TEST(SampleAdmissible, ExplicitLatticePoint) {
  const TomographySet set = make_tomography({1.0}, {diag({1.0, -1.0})});
  BlockDecomposition decomp;
  const AdmissibleHamiltonian h = extract(set, &decomp);
  const auto e = make_family_element(h, decomp, {1, 0}, {});
  EXPECT_LT(hs_dist(e.matrix, diag({2.0 * kPi, kPi})), 1e-12);
  EXPECT_LT(hs_dist(expm_i_herm(e.matrix, 1.0), diag({1.0, -1.0})), 1e-12);
}

TEST(SampleAdmissible, RandomElementsAreAdmissible) {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_consistent_set(rng, 4, 1 + rng.bits() % 3);
    BlockDecomposition decomp;
    const AdmissibleHamiltonian h = extract(s.set, &decomp);
    const auto e = sample_admissible(h, decomp, PriorDistribution::truncated_uniform(2), rng.bits());
    const auto rep = verify_admissible(e.matrix, s.set, 1e-8);
    EXPECT_TRUE(rep.ok);
    for (double r : rep.residuals) EXPECT_LE(r, 1e-8);
    const CMatrix shift = (e.matrix - h.matrix) / (2.0 * kPi * h.gamma);
    const HermitianEigen spec = herm_eig(0.5 * (shift + shift.adjoint()));
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
      EXPECT_NEAR(spec.eigenvalues(k), std::round(spec.eigenvalues(k)), 1e-9);
    }
  }
}

TEST(SampleAdmissible, IrrationalFamilyIsSingleton) {
  const CMatrix h0 = diag({0.3, -0.5});
  const std::vector<double> times{1.0, std::sqrt(2.0)};
  const TomographySet set = make_tomography(times, {expm_i_herm(h0, times[0]), expm_i_herm(h0, times[1])});
  BlockDecomposition decomp;
  const AdmissibleHamiltonian h = extract(set, &decomp);
  EXPECT_THROW(make_family_element(h, decomp, {1, 0}, {}), ConfigError);
}

TEST(VerifyAdmissible, OffLatticeShiftFails) {
  const TomographySet set = make_tomography({1.0}, {diag({1.0, -1.0})});
  BlockDecomposition decomp;
  const AdmissibleHamiltonian h = extract(set, &decomp);
  EXPECT_TRUE(verify_admissible(h.matrix, set, 1e-9).ok);
  const auto rep = verify_admissible(h.matrix + 0.1 * CMatrix::Identity(2, 2), set, 1e-9);
  EXPECT_FALSE(rep.ok);
  EXPECT_NEAR(rep.residuals[0], std::abs(std::polar(1.0, -0.1) - 1.0) * std::sqrt(2.0), 1e-12);
}

TEST(VerifyAdmissible, NonHermitianThrows) {
  const TomographySet set = make_tomography({1.0}, {CMatrix::Identity(2, 2)});
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(verify_admissible(h, set, 1e-9), HermiticityError);
}

TEST(EnumerateBranches, GuardOnHugeLcm) {
  RationalStructure rs;
  rs.rational = true;
  rs.lcm_q = 2'000'000;
  rs.gamma = 2'000'000.0;
  rs.tau1 = 1.0;
  rs.ratios = {{1, 1}};
  EXPECT_THROW(enumerate_branches({cdouble(1.0)}, {1.0}, rs), ConfigError);
}

TEST(ReduceHalfOpen, Window) {
  EXPECT_DOUBLE_EQ(reduce_half_open(kPi, 2.0 * kPi), kPi);
  EXPECT_NEAR(reduce_half_open(-kPi, 2.0 * kPi), kPi, 1e-15);
  EXPECT_NEAR(reduce_half_open(3.0 * kPi / 2.0, 2.0 * kPi), -kPi / 2.0, 1e-15);
}

}  // namespace
}  // namespace tomocast
