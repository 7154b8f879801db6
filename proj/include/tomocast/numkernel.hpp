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

#ifndef TOMOCAST_NUMKERNEL_HPP_
#define TOMOCAST_NUMKERNEL_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tomocast {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Relative hermiticity tolerance: ||H - H^dag|| <= kHermiticityTol * ||H||.
inline constexpr double kHermiticityTol = 1e-10;

struct HermitianEigen {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // columns, unitary
};

// Tr(A^dag B).
cdouble hs_inner(const CMatrix &a, const CMatrix &b);
double hs_norm(const CMatrix &a);

void require_square(const CMatrix &a, const char *what);
void require_same_dim(const CMatrix &a, const CMatrix &b, const char *what);

bool is_hermitian(const CMatrix &h, double rel_tol = kHermiticityTol);
double unitarity_residual(const CMatrix &u);

// Throws HermiticityError when `h` is not Hermitian to kHermiticityTol.
HermitianEigen herm_eig(const CMatrix &h);

// exp(-i t H) for Hermitian H, through the eigendecomposition.
CMatrix expm_i_herm(const CMatrix &h, double t);

CMatrix commutator(const CMatrix &a, const CMatrix &b);

// Kronecker product; (a (x) b)(i p + k, j q + l) = a(i, j) b(k, l).
CMatrix kron(const CMatrix &a, const CMatrix &b);

// Pauli matrices and the like, handy in tests and examples.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace tomocast

#endif  // TOMOCAST_NUMKERNEL_HPP_
