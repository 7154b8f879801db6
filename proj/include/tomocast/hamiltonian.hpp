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

#ifndef TOMOCAST_HAMILTONIAN_HPP_
#define TOMOCAST_HAMILTONIAN_HPP_

#include <cstdint>
#include <vector>

#include "tomocast/distributions.hpp"
#include "tomocast/numkernel.hpp"
#include "tomocast/rational.hpp"
#include "tomocast/snapshot.hpp"

namespace tomocast {

inline constexpr std::int64_t kMaxBranchCount = 1'000'000;

struct BranchOptions {
  double tol = 1e-8;                          // per-block phase residual
  std::int64_t irrational_search_bound = 256; // |n| range when times are irrational
};

// Block-scalar admissible Hamiltonian Omega (sum_i h_i 1_{V_i}) Omega^dag.
struct AdmissibleHamiltonian {
  std::vector<double> block_energies;
  CMatrix matrix;
  double gamma = 0.0;  // 0 when the times are not rationally related
  bool rational = false;
};

struct BranchCandidate {
  double energy = 0.0;
  double residual = 0.0;  // max_j |exp(-i tau_j h) - lambda^(j)|
};

// Every logarithm branch considered for one block: the q candidates reduced
// into (-pi gamma, pi gamma] in the rational case, 2N+1 principal shifts
// otherwise.
std::vector<BranchCandidate> enumerate_branches(const std::vector<cdouble> &phases,
                                                const std::vector<double> &times,
                                                const RationalStructure &structure,
                                                const BranchOptions &opts = {});

struct BranchChoice {
  BranchCandidate branch;
  bool passed = false;  // residual <= tol
};

// Picks the admissible branch: rational times prefer the smallest |h| among
// passing candidates, irrational times the smallest residual. When nothing
// passes, reports the candidate with the smallest residual.
BranchChoice choose_branch(const std::vector<BranchCandidate> &candidates, bool rational,
                           double tol);

// Rational times: among branches that pass every time, the one with the
// smallest |h| (ties resolved towards +pi gamma). Irrational times: the
// branch with the smallest residual. Throws NotConsistentError.
AdmissibleHamiltonian extract_min_norm_hamiltonian(const BlockDecomposition &decomp,
                                                   const RationalStructure &structure,
                                                   const std::vector<double> &times,
                                                   const BranchOptions &opts = {});

// H = H_hat + 2 pi gamma Omega R^dag diag(k) R Omega^dag with R = (+)_i R_i.
struct AdmissibleFamilyElement {
  AdmissibleHamiltonian base;
  std::vector<std::int64_t> k;
  std::vector<CMatrix> rotations;
  CMatrix matrix;
};

AdmissibleFamilyElement make_family_element(const AdmissibleHamiltonian &base,
                                            const BlockDecomposition &decomp,
                                            std::vector<std::int64_t> k,
                                            std::vector<CMatrix> rotations);

AdmissibleFamilyElement sample_admissible(const AdmissibleHamiltonian &base,
                                          const BlockDecomposition &decomp,
                                          const PriorDistribution &k_dist, std::uint64_t seed);

struct AdmissibilityReport {
  bool ok = false;
  std::vector<double> residuals;  // ||exp(-i tau_j H) - U^(j)||_HS
};

double default_admissibility_tol(Eigen::Index dim);

AdmissibilityReport verify_admissible(const CMatrix &h, const TomographySet &set, double tol);

// Reduces x into (-period/2, period/2].
double reduce_half_open(double x, double period);

}  // namespace tomocast

#endif  // TOMOCAST_HAMILTONIAN_HPP_
