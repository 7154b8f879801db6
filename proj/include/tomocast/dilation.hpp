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

#ifndef TOMOCAST_DILATION_HPP_
#define TOMOCAST_DILATION_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tomocast/numkernel.hpp"

namespace tomocast {

// Composite space H_s (x) H_e is indexed i * n_e + alpha; the bath reference
// state is |0>, so |j0> sits at column j * n_e.

inline constexpr double kCompletenessTol = 1e-10;

struct KrausSet {
  Eigen::Index sys_dim = 0;
  Eigen::Index env_dim = 0;
  std::vector<CMatrix> operators;  // env_dim operators, each sys_dim x sys_dim
};

// || sum_k E_k^dag E_k - 1 ||_HS. Throws DimensionError on malformed sets.
double completeness_residual(const KrausSet &kraus);

// <i alpha|U|j 0> = E_alpha(i, j); the remaining columns are a seeded random
// orthonormal completion. Throws KrausError.
CMatrix kraus_to_unitary(const KrausSet &kraus, std::uint64_t seed);

// E_k(i, j) = <i k|U|j 0>.
KrausSet osr_from_unitary(const CMatrix &u, Eigen::Index n_s, Eigen::Index n_e);

// Identity on span{|j0>} and a Haar unitary on its orthocomplement.
CMatrix random_centralizer_element(Eigen::Index n_s, Eigen::Index n_e, std::uint64_t seed);

CMatrix partial_trace_env(const CMatrix &m, Eigen::Index n_s, Eigen::Index n_e);

// Tr_env[U (rho (x) |0><0|) U^dag].
CMatrix apply_dilated(const CMatrix &u, const CMatrix &rho, Eigen::Index n_e);

// sum_k E_k rho E_k^dag.
CMatrix apply_kraus(const KrausSet &kraus, const CMatrix &rho);

// True iff U and W induce the same reduced map on every matrix unit.
bool equivalence_check(const CMatrix &u, const CMatrix &w, Eigen::Index n_s, Eigen::Index n_e,
                       double tol);

// F_k = sum_j V(k, j) E_j for a unitary V on the bath index.
KrausSet mix_kraus(const KrausSet &kraus, const CMatrix &v);

// {"n_s": .., "n_e": .., "operators": [matrix, ...]}
KrausSet load_kraus(const std::string &text);
KrausSet load_kraus(std::istream &in);
std::string emit_kraus(const KrausSet &kraus);

}  // namespace tomocast

#endif  // TOMOCAST_DILATION_HPP_
