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

#ifndef TOMOCAST_PREDICTOR_HPP_
#define TOMOCAST_PREDICTOR_HPP_

#include <string>
#include <vector>

#include "tomocast/distributions.hpp"
#include "tomocast/hamiltonian.hpp"
#include "tomocast/numkernel.hpp"
#include "tomocast/rational.hpp"
#include "tomocast/snapshot.hpp"

namespace tomocast {

struct PredictorOptions {
  std::int64_t q_max = kDefaultQMax;
  double rtol = kDefaultRationalTol;
  double cluster_tol = kDefaultClusterTol;
  BranchOptions branch;
  std::uint64_t seed = 0x5eedULL;  // simultaneous-diagonalization coefficients
};

// The averaged evolution map Psi_t obtained by weighting every admissible
// Hamiltonian H_hat + 2 pi gamma R^dag diag(k) R R by the prior on k. Its
// action is fixed by the block data, the minimal-norm Hamiltonian and
// |phi(2 pi gamma t)|^2. Immutable once built.
class PredictedChannel {
 public:
  PredictedChannel(BlockDecomposition decomp, AdmissibleHamiltonian hhat, PriorDistribution dist);

  // Decomposes, rationalizes and extracts H_hat from the measured data.
  static PredictedChannel from_tomography(const TomographySet &set, PriorDistribution dist,
                                          const PredictorOptions &opts = {});

  const BlockDecomposition &decomposition() const { return decomp_; }
  const AdmissibleHamiltonian &hamiltonian() const { return hhat_; }
  const PriorDistribution &distribution() const { return dist_; }
  const std::vector<std::string> &warnings() const { return warnings_; }
  double gamma() const { return hhat_.gamma; }
  bool rational() const { return hhat_.rational; }
  Eigen::Index dim() const { return decomp_.dim(); }

  // |phi(2 pi gamma t)|^2, or 1 when the times are not rationally related
  // (the admissible family is then a single Hamiltonian).
  double coherence(double t) const;

 private:
  BlockDecomposition decomp_;
  AdmissibleHamiltonian hhat_;
  PriorDistribution dist_;
  std::vector<std::string> warnings_;
};

// Orthogonal projection onto the commutant: keeps the diagonal blocks (in
// the shared eigenbasis) and zeroes the rest.
CMatrix pinch_commutant(const CMatrix &a, const BlockDecomposition &decomp);

// Orthogonal projection onto the bicommutant: each diagonal block replaced by
// Tr(A_ii)/mu_i times the identity.
CMatrix project_bicommutant(const CMatrix &a, const BlockDecomposition &decomp);

// (+)_i 1/(mu_i + 1) 1_{V_i}.
CMatrix upsilon(const BlockDecomposition &decomp);

// Blockwise evaluation:
//   Psi(A)_ii = alpha_i A_ii + (1 - alpha_i) Tr(A_ii)/mu_i 1,
//   alpha_i = c + (1 - c)/(mu_i + 1),
//   Psi(A)_ij = exp(-i t (h_i - h_j)) c A_ij,
// with c = |phi(2 pi gamma t)|^2.
CMatrix apply(const PredictedChannel &channel, double t, const CMatrix &a);

// Same map assembled from its operator form
//   c e^{-itH} A e^{itH} + (1 - c) [Upsilon P^C(A) + (1 - Upsilon) P^B(A)].
CMatrix apply_operator_form(const PredictedChannel &channel, double t, const CMatrix &a);

struct ChoiMatrix {
  CMatrix matrix;  // d^2 x d^2, index (a, j) -> a * d + j
  Eigen::Index dim = 0;

  cdouble trace() const { return matrix.trace(); }
  double hermiticity_residual() const { return (matrix - matrix.adjoint()).norm(); }
  double min_eigenvalue() const;
};

// J = sum_{jk} Psi_t(|j><k|) (x) |j><k|.
ChoiMatrix choi(const PredictedChannel &channel, double t);

// Throws StateError unless rho is Hermitian, PSD and unit trace to 1e-10.
void validate_density(const CMatrix &rho, Eigen::Index dim);

std::vector<CMatrix> trajectory(const PredictedChannel &channel, const CMatrix &rho0,
                                const std::vector<double> &times);

namespace closed_form {

// One qubit with two one-dimensional blocks, H_hat = a Z_hat + b 1:
//   1/2 (A + Z A Z) + 1/2 c e^{-2 i a t Z} (A - Z A Z).
CMatrix dephasing_qubit(const CMatrix &a, const CMatrix &zhat, double energy_a, double coherence,
                        double t);

// One qubit, single two-dimensional block:
//   1/3 (1 + 2c) A + 2/3 Tr(A) (1 - c) 1/2.
CMatrix depolarizing_qubit(const CMatrix &a, double coherence);

}  // namespace closed_form

}  // namespace tomocast

#endif  // TOMOCAST_PREDICTOR_HPP_
