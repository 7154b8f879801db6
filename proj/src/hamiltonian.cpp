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

#include "tomocast/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "tomocast/errors.hpp"
#include "tomocast/random.hpp"

namespace tomocast {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double phase_residual(double h, const std::vector<cdouble> &phases,
                      const std::vector<double> &times) {
  double worst = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    worst = std::max(worst, std::abs(std::polar(1.0, -times[j] * h) - phases[j]));
  }
  return worst;
}

}  // namespace

double reduce_half_open(double x, double period) {
  const double half = 0.5 * period;
  double r = x - period * std::floor((x + half) / period);  // [-half, half)
  // Values sitting on the lower edge belong to the upper one.
  if (r <= -half * (1.0 - 1e-12)) r += period;
  return r;
}

std::vector<BranchCandidate> enumerate_branches(const std::vector<cdouble> &phases,
                                                const std::vector<double> &times,
                                                const RationalStructure &structure,
                                                const BranchOptions &opts) {
  if (phases.size() != times.size() || times.empty()) {
    throw DimensionError("enumerate_branches: one phase per measurement time required");
  }
  const double tau1 = times.front();
  const double principal = -std::arg(phases.front()) / tau1;
  std::vector<BranchCandidate> out;
  if (structure.rational) {
    const std::int64_t q = structure.lcm_q;
    if (q < 1 || q > kMaxBranchCount) {
      throw ConfigError("branch search over " + std::to_string(q) +
                        " candidates exceeds the configured limit");
    }
    const double period = kTwoPi * structure.gamma;
    out.reserve(static_cast<std::size_t>(q));
    for (std::int64_t n = 0; n < q; ++n) {
      const double h = reduce_half_open(principal + kTwoPi * static_cast<double>(n) / tau1, period);
      out.push_back({h, phase_residual(h, phases, times)});
    }
  } else {
    const std::int64_t bound = opts.irrational_search_bound;
    if (bound < 0 || 2 * bound + 1 > kMaxBranchCount) {
      throw ConfigError("irrational branch search bound out of range");
    }
    for (std::int64_t n = -bound; n <= bound; ++n) {
      const double h = principal + kTwoPi * static_cast<double>(n) / tau1;
      out.push_back({h, phase_residual(h, phases, times)});
    }
  }
  return out;
}

BranchChoice choose_branch(const std::vector<BranchCandidate> &candidates, bool rational,
                           double tol) {
  if (candidates.empty()) throw ConfigError("choose_branch: no candidates");
  BranchChoice choice;
  const BranchCandidate *best = nullptr;
  for (const BranchCandidate &c : candidates) {
    if (c.residual > tol) continue;
    if (best == nullptr) {
      best = &c;
      continue;
    }
    const double ac = std::abs(c.energy);
    const double ab = std::abs(best->energy);
    const bool same_norm = std::abs(ac - ab) <= 1e-12 * std::max(1.0, ab);
    bool better = false;
    if (rational) {
      better = same_norm ? c.energy > best->energy : ac < ab;
    } else {
      better = c.residual < best->residual || (c.residual == best->residual && ac < ab);
    }
    if (better) best = &c;
  }
  if (best != nullptr) {
    choice.branch = *best;
    choice.passed = true;
    return choice;
  }
  best = &candidates.front();
  for (const BranchCandidate &c : candidates) {
    if (c.residual < best->residual) best = &c;
  }
  choice.branch = *best;
  choice.passed = false;
  return choice;
}

AdmissibleHamiltonian extract_min_norm_hamiltonian(const BlockDecomposition &decomp,
                                                   const RationalStructure &structure,
                                                   const std::vector<double> &times,
                                                   const BranchOptions &opts) {
  AdmissibleHamiltonian out;
  out.rational = structure.rational;
  out.gamma = structure.rational ? structure.gamma : 0.0;
  const Eigen::Index d = decomp.dim();
  CVector diag(d);
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    const Block &b = decomp.blocks[i];
    const auto candidates = enumerate_branches(b.phases, times, structure, opts);
    const BranchChoice choice = choose_branch(candidates, structure.rational, opts.tol);
    if (!choice.passed) throw NotConsistentError(i, choice.branch.residual);
    out.block_energies.push_back(choice.branch.energy);
    diag.segment(b.offset, b.dim).setConstant(choice.branch.energy);
  }
  out.matrix = decomp.basis * diag.asDiagonal() * decomp.basis.adjoint();
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint());
  return out;
}

AdmissibleFamilyElement make_family_element(const AdmissibleHamiltonian &base,
                                            const BlockDecomposition &decomp,
                                            std::vector<std::int64_t> k,
                                            std::vector<CMatrix> rotations) {
  const Eigen::Index d = decomp.dim();
  if (static_cast<Eigen::Index>(k.size()) != d) {
    throw DimensionError("make_family_element: lattice vector length must equal the dimension");
  }
  if (rotations.empty()) {
    for (const Block &b : decomp.blocks) rotations.push_back(CMatrix::Identity(b.dim, b.dim));
  }
  if (rotations.size() != decomp.kappa()) {
    throw DimensionError("make_family_element: one rotation per block required");
  }
  CMatrix r = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    const Block &b = decomp.blocks[i];
    if (rotations[i].rows() != b.dim || rotations[i].cols() != b.dim) {
      throw DimensionError("make_family_element: rotation " + std::to_string(i) +
                           " does not match its block");
    }
    r.block(b.offset, b.offset, b.dim, b.dim) = rotations[i];
  }
  bool nonzero = false;
  CVector kd(d);
  for (Eigen::Index l = 0; l < d; ++l) {
    kd[l] = static_cast<double>(k[static_cast<std::size_t>(l)]);
    nonzero = nonzero || k[static_cast<std::size_t>(l)] != 0;
  }
  if (nonzero && !base.rational) {
    throw ConfigError("the admissible family is a singleton when times are not rationally related");
  }
  AdmissibleFamilyElement out;
  const CMatrix shift = decomp.basis * r.adjoint() * kd.asDiagonal() * r * decomp.basis.adjoint();
  out.matrix = base.matrix + (2.0 * std::numbers::pi * base.gamma) * shift;
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint());
  out.base = base;
  out.k = std::move(k);
  out.rotations = std::move(rotations);
  return out;
}

AdmissibleFamilyElement sample_admissible(const AdmissibleHamiltonian &base,
                                          const BlockDecomposition &decomp,
                                          const PriorDistribution &k_dist, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> k(static_cast<std::size_t>(decomp.dim()));
  for (auto &x : k) x = k_dist.draw(rng);
  std::vector<CMatrix> rotations;
  for (const Block &b : decomp.blocks) rotations.push_back(haar_unitary(rng, b.dim));
  return make_family_element(base, decomp, std::move(k), std::move(rotations));
}

double default_admissibility_tol(Eigen::Index dim) {
  return 1e-8 * std::sqrt(static_cast<double>(dim));
}

AdmissibilityReport verify_admissible(const CMatrix &h, const TomographySet &set, double tol) {
  require_square(h, "verify_admissible");
  if (h.rows() != set.dim()) throw DimensionError("verify_admissible: dimension mismatch");
  const HermitianEigen eig = herm_eig(h);
  AdmissibilityReport report;
  report.ok = true;
  for (std::size_t j = 0; j < set.size(); ++j) {
    CVector phases(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
      phases[k] = std::polar(1.0, -set.times[j] * eig.eigenvalues[k]);
    }
    const CMatrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    const double res = (u - set.unitaries[j]).norm();
    report.residuals.push_back(res);
    report.ok = report.ok && res <= tol;
  }
  return report;
}

}  // namespace tomocast
