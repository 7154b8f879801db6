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

#ifndef TOMOCAST_ORACLES_HPP_
#define TOMOCAST_ORACLES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tomocast/hamiltonian.hpp"
#include "tomocast/numkernel.hpp"
#include "tomocast/predictor.hpp"
#include "tomocast/snapshot.hpp"

namespace tomocast {

// Haar-distributed unitary; identical output for identical (n, seed).
CMatrix haar_sample_unitary(Eigen::Index n, std::uint64_t seed);

// Haar average of W B W^dag A W B^dag W^dag:
//   (d|Tr B|^2 - ||B||^2)/(d(d^2 - 1)) A + (d||B||^2 - |Tr B|^2)/(d^2 - 1) Tr(A) 1/d,
// and |B|^2 A for d = 1.
CMatrix closed_adjoint_average(const CMatrix &b, const CMatrix &a);

// The same average over R = (+)_i R_i with independent Haar blocks and
// B = (+)_i B_i, both written in the decomposition basis.
CMatrix closed_blockwise_average(const std::vector<CMatrix> &b_blocks, const CMatrix &a,
                                 const BlockDecomposition &decomp);

struct McEstimate {
  CMatrix estimate;
  RMatrix stderr_entries;  // standard error of each complex entry
  double max_stderr = 0.0;
  std::size_t samples = 0;
};

// Sample count per independently seeded shard. Shard sums are combined by
// pairwise summation, so results depend only on (seed, N).
inline constexpr std::size_t kShardSize = 4096;

McEstimate mc_adjoint_average(const CMatrix &b, const CMatrix &a, std::size_t n,
                              std::uint64_t seed);
McEstimate mc_blockwise_average(const std::vector<CMatrix> &b_blocks, const CMatrix &a,
                                const BlockDecomposition &decomp, std::size_t n,
                                std::uint64_t seed);

// Q(A) = 2 Tr(A) 1/d - A and its eigenprojectors.
CMatrix q_involution(const CMatrix &a);
CMatrix q_plus(const CMatrix &a);   // Tr(A) 1/d
CMatrix q_minus(const CMatrix &a);  // A - Tr(A) 1/d

// Superoperators act on row-major vec(A) (entry (i, j) at i d + j).
CVector vec(const CMatrix &a);
CMatrix unvec(const CVector &v, Eigen::Index d);
CMatrix superop_apply(const CMatrix &s, const CMatrix &a);
CMatrix superop_adjoint_action(const CMatrix &w);  // A -> W A W^dag
CMatrix superop_identity(Eigen::Index d);
CMatrix superop_q(Eigen::Index d);

struct TwirlReport {
  std::size_t sample_count = 0;
  cdouble c_id;
  cdouble c_q;
  double residual_norm = 0.0;    // Frobenius norm outside span{id, Q}
  double tolerance_sigma = 0.0;  // statistical scale of residual_norm
  CMatrix average;

  bool within(double sigmas) const {
    return residual_norm <= sigmas * tolerance_sigma + 1e-12;
  }
};

// (1/N) sum_k Ad_{W_k} X Ad_{W_k}^dag projected onto span{id, Q}.
TwirlReport twirl_superoperator(const CMatrix &x, std::size_t n, std::uint64_t seed);

// Coefficients (c_id, c_Q) of the span{id, Q} projection of any superoperator.
std::pair<cdouble, cdouble> project_id_q(const CMatrix &s);

// Weighted sum over k in supp(P)^d of the Haar-averaged conjugation by
// exp(-it (H_hat + 2 pi gamma R^dag diag(k) R)). Infinite priors are cut at
// tail mass tail_eps per site. Throws BudgetError past max_terms.
CMatrix bruteforce_prediction(const PredictedChannel &channel, double t, const CMatrix &a,
                              double tail_eps = 1e-10, std::int64_t max_terms = 10'000'000);

struct AdversaryOptions {
  double beta = 0.0;         // required lower bound on ||H - H_hat||_HS
  std::optional<CMatrix> k;  // integer-spectrum operator commuting with every U
};

struct AdversaryResult {
  std::int64_t r = 0;
  CMatrix h;
  std::vector<double> residuals;  // ||exp(-i tau_j H) - U^(j)||_HS
  double distance = 0.0;          // ||H - H_hat||_HS
};

// First r in 1..r_max for which H = H_hat + (2 pi r / tau_1) K reproduces
// every propagator to epsilon and sits further than beta from H_hat.
// Throws SearchExhausted.
AdversaryResult diophantine_adversary(const TomographySet &set, const BlockDecomposition &decomp,
                                      const AdmissibleHamiltonian &hhat, double epsilon,
                                      std::int64_t r_max, const AdversaryOptions &opts = {});

// Decomposes the set and extracts H_hat first.
AdversaryResult diophantine_adversary(const TomographySet &set, double epsilon,
                                      std::int64_t r_max, const AdversaryOptions &opts = {});

}  // namespace tomocast

#endif  // TOMOCAST_ORACLES_HPP_
