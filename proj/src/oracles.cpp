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

#include "tomocast/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tomocast/errors.hpp"
#include "tomocast/random.hpp"
#include "tomocast/rational.hpp"

namespace tomocast {

namespace {

template <typename T>
T pairwise_sum(const std::vector<T> &parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(parts, lo, mid) + pairwise_sum(parts, mid, hi);
}

struct EntryMoments {
  CMatrix sum;
  RMatrix sum_sq;

  EntryMoments operator+(const EntryMoments &o) const { return {sum + o.sum, sum_sq + o.sum_sq}; }
};

template <typename Sampler>
McEstimate run_sharded(Eigen::Index d, std::size_t n, std::uint64_t seed, Sampler sampler) {
  if (n < 2) throw ConfigError("Monte-Carlo estimate needs at least two samples");
  const std::size_t shards = (n + kShardSize - 1) / kShardSize;
  std::vector<EntryMoments> parts;
  parts.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    Rng rng(derive_seed(seed, s));
    const std::size_t count = std::min(kShardSize, n - s * kShardSize);
    EntryMoments m{CMatrix::Zero(d, d), RMatrix::Zero(d, d)};
    for (std::size_t k = 0; k < count; ++k) {
      const CMatrix x = sampler(rng);
      m.sum += x;
      m.sum_sq += x.cwiseAbs2();
    }
    parts.push_back(std::move(m));
  }
  const EntryMoments total = pairwise_sum(parts, 0, parts.size());
  const double nn = static_cast<double>(n);
  McEstimate out;
  out.samples = n;
  out.estimate = total.sum / nn;
  const RMatrix var = ((total.sum_sq / nn) - out.estimate.cwiseAbs2()).cwiseMax(0.0) * (nn / (nn - 1.0));
  out.stderr_entries = (var / nn).cwiseSqrt();
  out.max_stderr = out.stderr_entries.maxCoeff();
  return out;
}

void check_blocks(const std::vector<CMatrix> &b_blocks, const CMatrix &a,
                  const BlockDecomposition &decomp, const char *what) {
  require_square(a, what);
  if (a.rows() != decomp.dim()) throw DimensionError(std::string(what) + ": operator dimension mismatch");
  if (b_blocks.size() != decomp.kappa()) {
    throw DimensionError(std::string(what) + ": one B block per decomposition block required");
  }
  for (std::size_t i = 0; i < b_blocks.size(); ++i) {
    if (b_blocks[i].rows() != decomp.blocks[i].dim || b_blocks[i].cols() != decomp.blocks[i].dim) {
      throw DimensionError(std::string(what) + ": block " + std::to_string(i) + " has the wrong size");
    }
  }
}

}  // namespace

CMatrix haar_sample_unitary(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("haar_sample_unitary: n must be positive");
  Rng rng(seed);
  return haar_unitary(rng, n);
}

CMatrix closed_adjoint_average(const CMatrix &b, const CMatrix &a) {
  require_same_dim(b, a, "closed_adjoint_average");
  const Eigen::Index n = a.rows();
  const double d = static_cast<double>(n);
  if (n == 1) return std::norm(b(0, 0)) * a;
  const double tr2 = std::norm(b.trace());
  const double nb2 = b.squaredNorm();
  const double c1 = (d * tr2 - nb2) / (d * (d * d - 1.0));
  const double c2 = (d * nb2 - tr2) / (d * d - 1.0);
  CMatrix out = c1 * a;
  out.diagonal().array() += c2 * a.trace() / d;
  return out;
}

CMatrix closed_blockwise_average(const std::vector<CMatrix> &b_blocks, const CMatrix &a,
                                 const BlockDecomposition &decomp) {
  check_blocks(b_blocks, a, decomp, "closed_blockwise_average");
  const CMatrix in = decomp.basis.adjoint() * a * decomp.basis;
  CMatrix out(in.rows(), in.cols());
  std::vector<cdouble> mean_phase(decomp.kappa());
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    mean_phase[i] = b_blocks[i].trace() / static_cast<double>(decomp.blocks[i].dim);
  }
  for (std::size_t i = 0; i < decomp.kappa(); ++i) {
    const Block &bi = decomp.blocks[i];
    for (std::size_t j = 0; j < decomp.kappa(); ++j) {
      const Block &bj = decomp.blocks[j];
      const auto aij = in.block(bi.offset, bj.offset, bi.dim, bj.dim);
      if (i == j) {
        out.block(bi.offset, bi.offset, bi.dim, bi.dim) = closed_adjoint_average(b_blocks[i], aij);
      } else {
        out.block(bi.offset, bj.offset, bi.dim, bj.dim) = mean_phase[i] * std::conj(mean_phase[j]) * aij;
      }
    }
  }
  return decomp.basis * out * decomp.basis.adjoint();
}

McEstimate mc_adjoint_average(const CMatrix &b, const CMatrix &a, std::size_t n, std::uint64_t seed) {
  require_same_dim(b, a, "mc_adjoint_average");
  const Eigen::Index d = a.rows();
  return run_sharded(d, n, seed, [&](Rng &rng) {
    const CMatrix w = haar_unitary(rng, d);
    const CMatrix c = w * b * w.adjoint();
    return CMatrix(c * a * c.adjoint());
  });
}

McEstimate mc_blockwise_average(const std::vector<CMatrix> &b_blocks, const CMatrix &a,
                                const BlockDecomposition &decomp, std::size_t n,
                                std::uint64_t seed) {
  check_blocks(b_blocks, a, decomp, "mc_blockwise_average");
  const Eigen::Index d = a.rows();
  const CMatrix in = decomp.basis.adjoint() * a * decomp.basis;
  return run_sharded(d, n, seed, [&](Rng &rng) {
    CMatrix c = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < decomp.kappa(); ++i) {
      const Block &bi = decomp.blocks[i];
      const CMatrix r = haar_unitary(rng, bi.dim);
      c.block(bi.offset, bi.offset, bi.dim, bi.dim) = r * b_blocks[i] * r.adjoint();
    }
    return CMatrix(decomp.basis * (c * in * c.adjoint()) * decomp.basis.adjoint());
  });
}

CMatrix q_involution(const CMatrix &a) {
  require_square(a, "q_involution");
  CMatrix out = -a;
  out.diagonal().array() += 2.0 * a.trace() / static_cast<double>(a.rows());
  return out;
}

CMatrix q_plus(const CMatrix &a) {
  require_square(a, "q_plus");
  return CMatrix::Identity(a.rows(), a.cols()) * (a.trace() / static_cast<double>(a.rows()));
}

CMatrix q_minus(const CMatrix &a) { return a - q_plus(a); }

CVector vec(const CMatrix &a) {
  CVector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  }
  return v;
}

CMatrix unvec(const CVector &v, Eigen::Index d) {
  if (v.size() != d * d) throw DimensionError("unvec: length is not d^2");
  CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = v(i * d + j);
  }
  return a;
}

CMatrix superop_apply(const CMatrix &s, const CMatrix &a) {
  require_square(a, "superop_apply");
  if (s.rows() != a.size() || s.cols() != a.size()) {
    throw DimensionError("superop_apply: superoperator does not act on this dimension");
  }
  return unvec(s * vec(a), a.rows());
}

CMatrix superop_adjoint_action(const CMatrix &w) {
  require_square(w, "superop_adjoint_action");
  return kron(w, w.conjugate());
}

CMatrix superop_identity(Eigen::Index d) { return CMatrix::Identity(d * d, d * d); }

CMatrix superop_q(Eigen::Index d) {
  const CVector one = vec(CMatrix::Identity(d, d));
  return (2.0 / static_cast<double>(d)) * one * one.adjoint() - superop_identity(d);
}

namespace {

// Orthonormal pair spanning {id, Q} under the Frobenius inner product.
struct IdQFrame {
  CMatrix e1;
  CMatrix e2;
  CMatrix q;
  double q_on_e1;  // <e1, Q>
  double q_on_e2;  // <e2, Q>
};

IdQFrame id_q_frame(Eigen::Index d) {
  IdQFrame f;
  const CMatrix id = superop_identity(d);
  f.q = superop_q(d);
  f.e1 = id / id.norm();
  f.q_on_e1 = hs_inner(f.e1, f.q).real();
  const CMatrix rest = f.q - f.q_on_e1 * f.e1;
  f.e2 = rest / rest.norm();
  f.q_on_e2 = hs_inner(f.e2, f.q).real();
  return f;
}

Eigen::Index superop_dim(const CMatrix &s, const char *what) {
  require_square(s, what);
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  if (d * d != s.rows() || d < 2) {
    throw DimensionError(std::string(what) + ": superoperator size must be d^2 with d >= 2");
  }
  return d;
}

}  // namespace

std::pair<cdouble, cdouble> project_id_q(const CMatrix &s) {
  const Eigen::Index d = superop_dim(s, "project_id_q");
  const IdQFrame f = id_q_frame(d);
  const cdouble a1 = hs_inner(f.e1, s);
  const cdouble a2 = hs_inner(f.e2, s);
  // s_par = a1 e1 + a2 e2 = c_id id + c_Q Q, with Q = q_on_e1 e1 + q_on_e2 e2.
  const cdouble c_q = a2 / f.q_on_e2;
  const cdouble c_id = (a1 - c_q * f.q_on_e1) / static_cast<double>(d);
  return {c_id, c_q};
}

TwirlReport twirl_superoperator(const CMatrix &x, std::size_t n, std::uint64_t seed) {
  const Eigen::Index d = superop_dim(x, "twirl_superoperator");
  if (n < 2) throw ConfigError("twirl_superoperator needs at least two samples");
  const IdQFrame f = id_q_frame(d);

  struct Acc {
    CMatrix sum;
    double perp_sq = 0.0;  // sum of ||P_perp Y||^2
    Acc operator+(const Acc &o) const { return {sum + o.sum, perp_sq + o.perp_sq}; }
  };

  const std::size_t shards = (n + kShardSize - 1) / kShardSize;
  std::vector<Acc> parts;
  parts.reserve(shards);
  for (std::size_t s = 0; s < shards; ++s) {
    Rng rng(derive_seed(seed, s));
    const std::size_t count = std::min(kShardSize, n - s * kShardSize);
    Acc acc{CMatrix::Zero(x.rows(), x.cols()), 0.0};
    for (std::size_t k = 0; k < count; ++k) {
      const CMatrix w = haar_unitary(rng, d);
      const CMatrix sw = superop_adjoint_action(w);
      const CMatrix y = sw * x * sw.adjoint();
      acc.sum += y;
      acc.perp_sq += y.squaredNorm() - std::norm(hs_inner(f.e1, y)) - std::norm(hs_inner(f.e2, y));
    }
    parts.push_back(std::move(acc));
  }
  const Acc total = pairwise_sum(parts, 0, parts.size());
  const double nn = static_cast<double>(n);

  TwirlReport report;
  report.sample_count = n;
  report.average = total.sum / nn;
  const auto [c_id, c_q] = project_id_q(report.average);
  report.c_id = c_id;
  report.c_q = c_q;
  const CMatrix resid = report.average - c_id * superop_identity(d) - c_q * f.q;
  report.residual_norm = resid.norm();
  const double spread = std::max(0.0, total.perp_sq / nn - resid.squaredNorm());
  report.tolerance_sigma = std::sqrt(spread / (nn - 1.0));
  return report;
}

CMatrix bruteforce_prediction(const PredictedChannel &channel, double t, const CMatrix &a,
                              double tail_eps, std::int64_t max_terms) {
  const BlockDecomposition &decomp = channel.decomposition();
  require_square(a, "bruteforce_prediction");
  if (a.rows() != decomp.dim()) throw DimensionError("bruteforce_prediction: operator dimension mismatch");
  const CMatrix u_hat = expm_i_herm(channel.hamiltonian().matrix, t);
  if (!channel.rational()) return u_hat * a * u_hat.adjoint();

  const PriorDistribution &dist = channel.distribution();
  const std::int64_t kmax = dist.tail_truncation(tail_eps);
  std::vector<std::int64_t> support;
  std::vector<double> weight;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    const double p = dist.pmf(k);
    if (p > 0.0) {
      support.push_back(k);
      weight.push_back(p);
    }
  }
  const auto d = static_cast<std::size_t>(decomp.dim());
  double terms = 1.0;
  for (std::size_t l = 0; l < d; ++l) terms *= static_cast<double>(support.size());
  if (terms > static_cast<double>(max_terms)) {
    throw BudgetError("bruteforce_prediction: " + std::to_string(static_cast<long double>(terms)) +
                      " lattice points exceed the budget of " + std::to_string(max_terms));
  }

  const double omega = 2.0 * std::numbers::pi * channel.gamma() * t;
  std::vector<cdouble> site_phase(support.size());
  for (std::size_t s = 0; s < support.size(); ++s) {
    site_phase[s] = std::polar(1.0, -omega * static_cast<double>(support[s]));
  }

  std::vector<CMatrix> b_blocks;
  for (const Block &b : decomp.blocks) b_blocks.push_back(CMatrix::Zero(b.dim, b.dim));
  std::vector<std::size_t> idx(d, 0);
  CMatrix acc = CMatrix::Zero(a.rows(), a.cols());
  while (true) {
    double w = 1.0;
    std::size_t site = 0;
    for (std::size_t i = 0; i < decomp.kappa(); ++i) {
      for (Eigen::Index l = 0; l < decomp.blocks[i].dim; ++l, ++site) {
        b_blocks[i](l, l) = site_phase[idx[site]];
        w *= weight[idx[site]];
      }
    }
    acc += w * closed_blockwise_average(b_blocks, a, decomp);
    std::size_t pos = 0;
    while (pos < d && ++idx[pos] == support.size()) idx[pos++] = 0;
    if (pos == d) break;
  }
  return u_hat * acc * u_hat.adjoint();
}

namespace {

CMatrix default_adversary_k(const BlockDecomposition &decomp) {
  std::size_t largest = 0;
  for (std::size_t i = 1; i < decomp.kappa(); ++i) {
    if (decomp.blocks[i].dim > decomp.blocks[largest].dim) largest = i;
  }
  const CVector v = decomp.basis.col(decomp.blocks[largest].offset);
  return v * v.adjoint();
}

std::vector<double> integer_spectrum(const CMatrix &k, const TomographySet &set) {
  require_square(k, "adversary K");
  if (k.rows() != set.dim()) throw DimensionError("adversary K: dimension mismatch");
  if (!is_hermitian(k)) throw ConfigError("adversary K must be Hermitian");
  const double scale = std::max(1.0, k.norm());
  for (const CMatrix &u : set.unitaries) {
    if (commutator(k, u).norm() > 1e-8 * scale) {
      throw ConfigError("adversary K must commute with every propagator");
    }
  }
  std::vector<double> out;
  for (double ev : herm_eig(k).eigenvalues) {
    const double n = std::round(ev);
    if (std::abs(ev - n) > 1e-9 * scale) throw ConfigError("adversary K must have integer spectrum");
    if (n != 0.0) out.push_back(n);
  }
  if (out.empty()) throw ConfigError("adversary K must be nonzero");
  return out;
}

}  // namespace

AdversaryResult diophantine_adversary(const TomographySet &set, const BlockDecomposition &decomp,
                                      const AdmissibleHamiltonian &hhat, double epsilon,
                                      std::int64_t r_max, const AdversaryOptions &opts) {
  validate_tomography(set);
  if (!(epsilon > 0.0)) throw ConfigError("adversary epsilon must be positive");
  if (r_max < 1) throw ConfigError("adversary r_max must be at least 1");
  if (opts.beta < 0.0) throw ConfigError("adversary beta must be nonnegative");
  const CMatrix k = opts.k ? *opts.k : default_adversary_k(decomp);
  const std::vector<double> spectrum = integer_spectrum(k, set);
  const double k_norm = k.norm();
  const double tau1 = set.times.front();
  const std::size_t m = set.size();

  std::vector<double> base(m);
  for (std::size_t j = 0; j < m; ++j) {
    base[j] = (expm_i_herm(hhat.matrix, set.times[j]) - set.unitaries[j]).norm();
  }

  auto exact = [&](std::int64_t r) {
    AdversaryResult res;
    res.r = r;
    res.h = hhat.matrix + (2.0 * std::numbers::pi * static_cast<double>(r) / tau1) * k;
    res.distance = (res.h - hhat.matrix).norm();
    res.residuals.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      res.residuals[j] = (expm_i_herm(res.h, set.times[j]) - set.unitaries[j]).norm();
    }
    return res;
  };
  auto worst = [](const std::vector<double> &v) { return *std::max_element(v.begin(), v.end()); };

  std::int64_t best_r = 1;
  double best_bound = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 1; r <= r_max; ++r) {
    if (2.0 * std::numbers::pi * static_cast<double>(r) / tau1 * k_norm < opts.beta) continue;
    // ||exp(-i theta K) - 1||_HS over each time, with theta = 2 pi r tau_j / tau_1.
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = static_cast<double>(r) * (set.times[j] / tau1);
      double s2 = 0.0;
      for (double n : spectrum) {
        const double y = x * n;
        const double frac = y - std::round(y);
        const double chord = 2.0 * std::sin(std::numbers::pi * frac);
        s2 += chord * chord;
      }
      const double s = std::sqrt(s2);
      lower = std::max(lower, s - base[j]);
      upper = std::max(upper, s + base[j]);
    }
    if (upper < best_bound) {
      best_bound = upper;
      best_r = r;
    }
    if (lower > epsilon) continue;
    AdversaryResult res = exact(r);
    if (worst(res.residuals) <= epsilon) return res;
  }
  throw SearchExhausted(best_r, worst(exact(best_r).residuals));
}

AdversaryResult diophantine_adversary(const TomographySet &set, double epsilon,
                                      std::int64_t r_max, const AdversaryOptions &opts) {
  validate_tomography(set);
  const BlockDecomposition decomp = shared_eigenspaces(set);
  const RationalStructure structure = rationalize(set.times);
  const AdmissibleHamiltonian hhat = extract_min_norm_hamiltonian(decomp, structure, set.times);
  return diophantine_adversary(set, decomp, hhat, epsilon, r_max, opts);
}

}  // namespace tomocast
