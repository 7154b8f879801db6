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

#include "tomocast/numkernel.hpp"

#include <string>

#include "tomocast/errors.hpp"

namespace tomocast {

cdouble hs_inner(const CMatrix &a, const CMatrix &b) {
  require_same_dim(a, b, "hs_inner");
  return (a.adjoint() * b).trace();
}

double hs_norm(const CMatrix &a) { return a.norm(); }

void require_square(const CMatrix &a, const char *what) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_same_dim(const CMatrix &a, const CMatrix &b, const char *what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

bool is_hermitian(const CMatrix &h, double rel_tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() <= rel_tol * h.norm();
}

double unitarity_residual(const CMatrix &u) {
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

HermitianEigen herm_eig(const CMatrix &h) {
  require_square(h, "herm_eig");
  if (!h.allFinite()) throw HermiticityError("herm_eig: non-finite entries");
  const double asym = (h - h.adjoint()).norm();
  if (asym > kHermiticityTol * h.norm()) {
    throw HermiticityError("herm_eig: matrix is not Hermitian (||H - H^dag|| = " +
                           std::to_string(asym) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_i_herm(const CMatrix &h, double t) {
  const HermitianEigen eig = herm_eig(h);
  CVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::polar(1.0, -t * eig.eigenvalues[k]);
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix commutator(const CMatrix &a, const CMatrix &b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, cdouble(0, -1), cdouble(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace tomocast
