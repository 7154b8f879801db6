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

#include "tomocast/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <limits>
#include <numeric>
#include <sstream>

#include "tomocast/errors.hpp"
#include "tomocast/hamiltonian.hpp"
#include "tomocast/io.hpp"
#include "tomocast/random.hpp"
#include "tomocast/rational.hpp"

namespace tomocast {

void validate_tomography(const TomographySet &set) {
  if (set.times.empty()) throw ConfigError("tomography set has no snapshots");
  if (set.times.size() != set.unitaries.size()) {
    throw DimensionError("tomography set: " + std::to_string(set.times.size()) + " times but " +
                         std::to_string(set.unitaries.size()) + " unitaries");
  }
  if (!(set.times.front() > 0.0)) throw TimeOrderError("measurement times must be positive");
  for (std::size_t j = 0; j < set.times.size(); ++j) {
    if (!std::isfinite(set.times[j])) throw TimeOrderError("measurement times must be finite");
    if (j > 0 && !(set.times[j] > set.times[j - 1])) {
      throw TimeOrderError("measurement times must be strictly increasing (index " +
                           std::to_string(j) + ")");
    }
  }
  const Eigen::Index d = set.unitaries.front().rows();
  for (std::size_t j = 0; j < set.unitaries.size(); ++j) {
    const CMatrix &u = set.unitaries[j];
    require_square(u, "tomography set");
    if (u.rows() != d) throw DimensionError("propagators have different dimensions");
    if (!u.allFinite()) throw UnitarityError(j, std::numeric_limits<double>::infinity());
    const double res = unitarity_residual(u);
    if (res > kUnitarityTol) throw UnitarityError(j, res);
  }
}

TomographySet make_tomography(std::vector<double> times, std::vector<CMatrix> unitaries) {
  TomographySet set{std::move(times), std::move(unitaries)};
  validate_tomography(set);
  return set;
}

TomographySet load_tomography(const std::string &text) {
  const json doc = parse_json(text, "tomography");
  if (!doc.is_object() || !doc.contains("times") || !doc.contains("unitaries")) {
    throw ParseError("tomography: expected an object with \"times\" and \"unitaries\"");
  }
  const json &times = doc["times"];
  const json &unitaries = doc["unitaries"];
  if (!times.is_array() || !unitaries.is_array()) {
    throw ParseError("tomography: \"times\" and \"unitaries\" must be arrays");
  }
  TomographySet set;
  for (const json &t : times) {
    if (!t.is_number()) throw ParseError("tomography: times must be numbers");
    set.times.push_back(t.get<double>());
  }
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    set.unitaries.push_back(matrix_from_json(unitaries[j], "unitaries[" + std::to_string(j) + "]"));
  }
  validate_tomography(set);
  return set;
}

TomographySet load_tomography(std::istream &in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_tomography(text);
}

std::string emit_tomography(const TomographySet &set) {
  json doc;
  doc["times"] = set.times;
  json mats = json::array();
  for (const CMatrix &u : set.unitaries) mats.push_back(matrix_to_json(u));
  doc["unitaries"] = std::move(mats);
  return doc.dump();
}

BlockDecomposition make_decomposition(CMatrix basis, const std::vector<Eigen::Index> &dims) {
  require_square(basis, "make_decomposition");
  BlockDecomposition out;
  Eigen::Index offset = 0;
  for (Eigen::Index mu : dims) {
    if (mu < 1) throw DimensionError("make_decomposition: block dimensions must be positive");
    out.blocks.push_back({offset, mu, {}});
    offset += mu;
  }
  if (offset != basis.rows()) {
    throw DimensionError("make_decomposition: block dimensions do not sum to the space dimension");
  }
  out.basis = std::move(basis);
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct RawBlock {
  CMatrix basis;  // d x mu, orthonormal
  std::vector<cdouble> phases;
  std::vector<Eigen::Index> pivots;
};

double max_phase_gap(const std::vector<cdouble> &a, const std::vector<cdouble> &b) {
  double gap = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) gap = std::max(gap, std::abs(a[j] - b[j]));
  return gap;
}

// Replaces an orthonormal basis of a subspace by a reproducible one: pivoted
// Gram-Schmidt on the projector columns, so coordinate subspaces come back as
// standard basis vectors. Pivot rows are returned ascending.
CMatrix canonical_basis(const CMatrix &s, std::vector<Eigen::Index> &pivots) {
  const Eigen::Index d = s.rows();
  const Eigen::Index mu = s.cols();
  CMatrix r = s * s.adjoint();
  std::vector<std::pair<Eigen::Index, CVector>> picked;
  for (Eigen::Index step = 0; step < mu; ++step) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < d; ++c) {
      const double n = r.col(c).norm();
      if (n > best_norm * (1.0 + 1e-12)) {
        best_norm = n;
        best = c;
      }
    }
    CVector v = r.col(best) / best_norm;
    for (Eigen::Index c = 0; c < d; ++c) r.col(c) -= v * v.dot(r.col(c));
    picked.emplace_back(best, std::move(v));
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });
  CMatrix out(d, mu);
  pivots.clear();
  for (Eigen::Index k = 0; k < mu; ++k) {
    CVector v = picked[static_cast<std::size_t>(k)].second;
    // Second Gram-Schmidt pass against the earlier columns.
    for (Eigen::Index l = 0; l < k; ++l) v -= out.col(l) * out.col(l).dot(v);
    v.normalize();
    const Eigen::Index piv = picked[static_cast<std::size_t>(k)].first;
    const cdouble lead = v[piv];
    if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
    out.col(k) = v;
    pivots.push_back(piv);
  }
  return out;
}

}  // namespace

BlockDecomposition shared_eigenspaces(const TomographySet &set, double tol, std::uint64_t seed) {
  validate_tomography(set);
  if (!(tol > 0.0)) throw ConfigError("shared_eigenspaces: tol must be positive");
  const std::size_t m = set.size();
  const Eigen::Index d = set.dim();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      const double c = commutator(set.unitaries[j], set.unitaries[k]).norm();
      if (c > tol) throw InconsistencyError(j, k, c);
    }
  }

  Rng rng(seed);
  BlockDecomposition out;
  std::vector<RawBlock> done;
  struct Pending {
    CMatrix basis;
    int attempts;
  };
  std::vector<Pending> work{{CMatrix::Identity(d, d), 0}};
  constexpr int kMaxAttempts = 8;

  while (!work.empty()) {
    Pending cur = std::move(work.back());
    work.pop_back();
    const Eigen::Index mu = cur.basis.cols();

    std::vector<CMatrix> restricted;
    restricted.reserve(m);
    for (const CMatrix &u : set.unitaries) restricted.push_back(cur.basis.adjoint() * u * cur.basis);

    // A generic real combination of the Hermitian and anti-Hermitian parts
    // separates the joint eigenspaces with probability one.
    CMatrix g = CMatrix::Zero(mu, mu);
    for (const CMatrix &u : restricted) {
      const double c1 = 2.0 * rng.uniform() - 1.0;
      const double c2 = 2.0 * rng.uniform() - 1.0;
      g += c1 * 0.5 * (u + u.adjoint()) + c2 * (u - u.adjoint()) / cdouble(0.0, 2.0);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (g + g.adjoint()));
    const CMatrix &v = solver.eigenvectors();

    std::vector<std::vector<cdouble>> tuples(static_cast<std::size_t>(mu), std::vector<cdouble>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const CMatrix diag = v.adjoint() * restricted[j] * v;
      for (Eigen::Index k = 0; k < mu; ++k) tuples[static_cast<std::size_t>(k)][j] = diag(k, k);
    }
    UnionFind uf(static_cast<std::size_t>(mu));
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      for (std::size_t b = a + 1; b < tuples.size(); ++b) {
        if (max_phase_gap(tuples[a], tuples[b]) <= tol) uf.unite(a, b);
      }
    }
    std::vector<std::vector<Eigen::Index>> clusters;
    std::vector<std::size_t> root_to_cluster(static_cast<std::size_t>(mu), SIZE_MAX);
    for (Eigen::Index k = 0; k < mu; ++k) {
      const std::size_t r = uf.find(static_cast<std::size_t>(k));
      if (root_to_cluster[r] == SIZE_MAX) {
        root_to_cluster[r] = clusters.size();
        clusters.emplace_back();
      }
      clusters[root_to_cluster[r]].push_back(k);
    }

    for (const auto &cluster : clusters) {
      const auto size = static_cast<Eigen::Index>(cluster.size());
      CMatrix sub(d, size);
      for (Eigen::Index c = 0; c < size; ++c) {
        sub.col(c) = cur.basis * v.col(cluster[static_cast<std::size_t>(c)]);
      }
      // Block-scalar check: S^dag U S close to lambda 1 and no leakage out of span(S).
      bool scalar = true;
      std::vector<cdouble> phases(m);
      for (std::size_t j = 0; j < m; ++j) {
        const CMatrix us = set.unitaries[j] * sub;
        const CMatrix inner = sub.adjoint() * us;
        const cdouble mean = inner.trace() / static_cast<double>(size);
        const double spread = (inner - mean * CMatrix::Identity(size, size)).cwiseAbs().maxCoeff();
        const double leak = (us - sub * inner).norm();
        if (spread > 10.0 * tol || leak > 10.0 * tol * std::sqrt(static_cast<double>(size))) {
          scalar = false;
        }
        phases[j] = std::abs(mean) > 0.0 ? mean / std::abs(mean) : cdouble(1.0, 0.0);
      }
      if (!scalar && cur.attempts + 1 < kMaxAttempts) {
        work.push_back({sub, cur.attempts + 1});
        continue;
      }
      if (!scalar) {
        out.warnings.push_back("a block of dimension " + std::to_string(size) +
                               " is only approximately scalar on every propagator");
      }
      RawBlock rb;
      rb.basis = canonical_basis(sub, rb.pivots);
      rb.phases = std::move(phases);
      done.push_back(std::move(rb));
    }
  }

  std::sort(done.begin(), done.end(), [](const RawBlock &x, const RawBlock &y) {
    if (x.pivots.front() != y.pivots.front()) return x.pivots.front() < y.pivots.front();
    for (std::size_t j = 0; j < x.phases.size(); ++j) {
      const double ax = std::arg(x.phases[j]);
      const double ay = std::arg(y.phases[j]);
      if (ax != ay) return ax < ay;
    }
    return false;
  });

  out.basis.resize(d, d);
  Eigen::Index offset = 0;
  for (const RawBlock &rb : done) {
    const Eigen::Index mu = rb.basis.cols();
    out.basis.middleCols(offset, mu) = rb.basis;
    out.blocks.push_back({offset, mu, rb.phases});
    offset += mu;
  }
  for (std::size_t a = 0; a < out.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < out.blocks.size(); ++b) {
      const double gap = max_phase_gap(out.blocks[a].phases, out.blocks[b].phases);
      if (gap <= 10.0 * tol) {
        out.warnings.push_back("blocks " + std::to_string(a) + " and " + std::to_string(b) +
                               " are separated by only " + std::to_string(gap) +
                               " in joint phase; the decomposition is sensitive to noise");
      }
    }
  }
  return out;
}

ConsistencyReport validate_consistency(const TomographySet &set, const BlockDecomposition &decomp,
                                       const RationalStructure &structure, double tol) {
  ConsistencyReport report;
  report.warnings = decomp.warnings;
  report.consistent = true;
  BranchOptions opts;
  opts.tol = tol;
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    const auto candidates = enumerate_branches(decomp.blocks[i].phases, set.times, structure, opts);
    const BranchChoice choice = choose_branch(candidates, structure.rational, tol);
    report.block_energies.push_back(choice.branch.energy);
    report.block_residuals.push_back(choice.branch.residual);
    if (!choice.passed) {
      report.consistent = false;
      if (report.message.empty()) {
        std::ostringstream msg;
        msg << "block " << i << ": no logarithm branch reproduces all propagators (best residual "
            << choice.branch.residual << ")";
        report.message = msg.str();
      }
    }
  }
  if (!structure.rational) {
    report.warnings.push_back(
        "times are not rationally related at the working tolerance; the admissible Hamiltonian "
        "is unique but its identification is not robust to noise");
  }
  return report;
}

}  // namespace tomocast
