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

#include "tomocast/predictor.hpp"

#include <cmath>
#include <numbers>

#include "tomocast/errors.hpp"

namespace tomocast {

PredictedChannel::PredictedChannel(BlockDecomposition decomp, AdmissibleHamiltonian hhat,
                                   PriorDistribution dist)
    : decomp_(std::move(decomp)), hhat_(std::move(hhat)), dist_(std::move(dist)) {
  if (hhat_.block_energies.size() != decomp_.kappa()) {
    throw DimensionError("PredictedChannel: one block energy per block required");
  }
  warnings_ = decomp_.warnings;
  if (!hhat_.rational) {
    warnings_.push_back(
        "times are not rationally related: prediction reduces to unitary evolution under the "
        "unique admissible Hamiltonian, which is highly non-robust to noise in the data");
  }
}

PredictedChannel PredictedChannel::from_tomography(const TomographySet &set, PriorDistribution dist,
                                                   const PredictorOptions &opts) {
  BlockDecomposition decomp = shared_eigenspaces(set, opts.cluster_tol, opts.seed);
  const RationalStructure structure = rationalize(set.times, opts.q_max, opts.rtol);
  AdmissibleHamiltonian hhat = extract_min_norm_hamiltonian(decomp, structure, set.times, opts.branch);
  return PredictedChannel(std::move(decomp), std::move(hhat), std::move(dist));
}

double PredictedChannel::coherence(double t) const {
  if (!hhat_.rational) return 1.0;
  const double c = std::norm(dist_.char_fn(2.0 * std::numbers::pi * hhat_.gamma * t));
  return std::min(c, 1.0);
}

namespace {

void require_operator(const CMatrix &a, const BlockDecomposition &decomp, const char *what) {
  require_square(a, what);
  if (a.rows() != decomp.dim()) {
    throw DimensionError(std::string(what) + ": operator dimension " + std::to_string(a.rows()) +
                         " does not match the decomposition (" + std::to_string(decomp.dim()) + ")");
  }
}

CMatrix to_block_basis(const CMatrix &a, const BlockDecomposition &decomp) {
  return decomp.basis.adjoint() * a * decomp.basis;
}

CMatrix from_block_basis(const CMatrix &a, const BlockDecomposition &decomp) {
  return decomp.basis * a * decomp.basis.adjoint();
}

}  // namespace

CMatrix pinch_commutant(const CMatrix &a, const BlockDecomposition &decomp) {
  require_operator(a, decomp, "pinch_commutant");
  const CMatrix t = to_block_basis(a, decomp);
  CMatrix out = CMatrix::Zero(t.rows(), t.cols());
  for (const Block &b : decomp.blocks) {
    out.block(b.offset, b.offset, b.dim, b.dim) = t.block(b.offset, b.offset, b.dim, b.dim);
  }
  return from_block_basis(out, decomp);
}

CMatrix project_bicommutant(const CMatrix &a, const BlockDecomposition &decomp) {
  require_operator(a, decomp, "project_bicommutant");
  const CMatrix t = to_block_basis(a, decomp);
  CVector diag(t.rows());
  for (const Block &b : decomp.blocks) {
    const cdouble tr = t.block(b.offset, b.offset, b.dim, b.dim).trace();
    diag.segment(b.offset, b.dim).setConstant(tr / static_cast<double>(b.dim));
  }
  return decomp.basis * diag.asDiagonal() * decomp.basis.adjoint();
}

CMatrix upsilon(const BlockDecomposition &decomp) {
  CVector diag(decomp.dim());
  for (const Block &b : decomp.blocks) {
    diag.segment(b.offset, b.dim).setConstant(1.0 / static_cast<double>(b.dim + 1));
  }
  return decomp.basis * diag.asDiagonal() * decomp.basis.adjoint();
}

CMatrix apply(const PredictedChannel &channel, double t, const CMatrix &a) {
  const BlockDecomposition &decomp = channel.decomposition();
  require_operator(a, decomp, "apply");
  const std::vector<double> &h = channel.hamiltonian().block_energies;
  const double c = channel.coherence(t);
  const CMatrix in = to_block_basis(a, decomp);
  CMatrix out(in.rows(), in.cols());
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    const Block &bi = decomp.blocks[i];
    const auto aii = in.block(bi.offset, bi.offset, bi.dim, bi.dim);
    if (bi.dim == 1) {
      out.block(bi.offset, bi.offset, 1, 1) = aii;
    } else {
      const double mu = static_cast<double>(bi.dim);
      const double alpha = c + (1.0 - c) / (mu + 1.0);
      const cdouble mean = aii.trace() / mu;
      CMatrix diag_block = alpha * aii;
      diag_block.diagonal().array() += (1.0 - alpha) * mean;
      out.block(bi.offset, bi.offset, bi.dim, bi.dim) = diag_block;
    }
    for (std::size_t j = 0; j < decomp.kappa(); ++j) {
      if (j == i) continue;
      const Block &bj = decomp.blocks[j];
      const cdouble beta = std::polar(c, -t * (h[i] - h[j]));
      out.block(bi.offset, bj.offset, bi.dim, bj.dim) =
          beta * in.block(bi.offset, bj.offset, bi.dim, bj.dim);
    }
  }
  return from_block_basis(out, decomp);
}

CMatrix apply_operator_form(const PredictedChannel &channel, double t, const CMatrix &a) {
  const BlockDecomposition &decomp = channel.decomposition();
  require_operator(a, decomp, "apply_operator_form");
  const double c = channel.coherence(t);
  const CMatrix u = expm_i_herm(channel.hamiltonian().matrix, t);
  const CMatrix ups = upsilon(decomp);
  const CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  return c * (u * a * u.adjoint()) +
         (1.0 - c) * (ups * pinch_commutant(a, decomp) + (id - ups) * project_bicommutant(a, decomp));
}

double ChoiMatrix::min_eigenvalue() const {
  const CMatrix sym = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ChoiMatrix choi(const PredictedChannel &channel, double t) {
  const Eigen::Index d = channel.dim();
  ChoiMatrix out;
  out.dim = d * d;
  out.matrix = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      CMatrix e = CMatrix::Zero(d, d);
      e(j, k) = 1.0;
      const CMatrix image = apply(channel, t, e);
      for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) out.matrix(a * d + j, b * d + k) = image(a, b);
      }
    }
  }
  return out;
}

void validate_density(const CMatrix &rho, Eigen::Index dim) {
  if (rho.rows() != rho.cols() || rho.rows() != dim) {
    throw StateError("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!rho.allFinite()) throw StateError("density matrix has non-finite entries");
  if ((rho - rho.adjoint()).norm() > 1e-10) throw StateError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw StateError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw StateError("density matrix is not positive semidefinite");
  }
}

std::vector<CMatrix> trajectory(const PredictedChannel &channel, const CMatrix &rho0,
                                const std::vector<double> &times) {
  validate_density(rho0, channel.dim());
  std::vector<CMatrix> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(apply(channel, t, rho0));
  return out;
}

namespace closed_form {

CMatrix dephasing_qubit(const CMatrix &a, const CMatrix &zhat, double energy_a, double coherence,
                        double t) {
  const CMatrix zaz = zhat * a * zhat;
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix rot = std::cos(2.0 * energy_a * t) * id - cdouble(0.0, std::sin(2.0 * energy_a * t)) * zhat;
  return 0.5 * (a + zaz) + 0.5 * coherence * rot * (a - zaz);
}

CMatrix depolarizing_qubit(const CMatrix &a, double coherence) {
  const CMatrix id = CMatrix::Identity(2, 2);
  return (1.0 + 2.0 * coherence) / 3.0 * a + (2.0 / 3.0) * a.trace() * (1.0 - coherence) * 0.5 * id;
}

}  // namespace closed_form

}  // namespace tomocast
