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

#ifndef TOMOCAST_TESTS_FIXTURES_HPP_
#define TOMOCAST_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "tomocast/dilation.hpp"
#include "tomocast/hamiltonian.hpp"
#include "tomocast/numkernel.hpp"
#include "tomocast/random.hpp"
#include "tomocast/snapshot.hpp"

namespace tomocast::testing {

inline CMatrix diag(std::initializer_list<cdouble> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (cdouble e : entries) v(i++) = e;
  return v.asDiagonal();
}

inline double hs_dist(const CMatrix &a, const CMatrix &b) { return (a - b).norm(); }

// A consistent set together with the data it was synthesized from.
struct Synthesized {
  TomographySet set;
  CMatrix basis;
  std::vector<Eigen::Index> dims;
  std::vector<double> energies;  // one per block
  CMatrix h;                     // generator used for every U
};

inline std::vector<Eigen::Index> random_partition(Rng &rng, Eigen::Index d) {
  std::vector<Eigen::Index> dims;
  Eigen::Index left = d;
  while (left > 0) {
    const auto mu = 1 + static_cast<Eigen::Index>(rng.bits() % static_cast<std::uint64_t>(left));
    dims.push_back(mu);
    left -= mu;
  }
  return dims;
}

// Rational times tau_1 * p_j/q_j with q_j <= q_limit, strictly increasing.
inline std::vector<double> random_rational_times(Rng &rng, std::size_t m, std::int64_t q_limit) {
  const double tau1 = 0.5 + 1.5 * rng.uniform();
  std::vector<double> times{tau1};
  double prev = 1.0;
  for (std::size_t j = 1; j < m; ++j) {
    const auto q = 1 + static_cast<std::int64_t>(rng.bits() % static_cast<std::uint64_t>(q_limit));
    const auto p = static_cast<std::int64_t>(std::floor(prev * static_cast<double>(q))) + 1 +
                   static_cast<std::int64_t>(rng.bits() % static_cast<std::uint64_t>(q));
    prev = static_cast<double>(p) / static_cast<double>(q);
    times.push_back(tau1 * prev);
  }
  return times;
}

inline CMatrix block_hamiltonian(const CMatrix &basis, const std::vector<Eigen::Index> &dims,
                                 const std::vector<double> &energies) {
  CVector diag_h(basis.rows());
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    diag_h.segment(off, dims[i]).setConstant(energies[i]);
    off += dims[i];
  }
  return basis * diag_h.asDiagonal() * basis.adjoint();
}

inline TomographySet synthesize(const CMatrix &basis, const std::vector<Eigen::Index> &dims,
                                const std::vector<double> &energies, const std::vector<double> &times) {
  const CMatrix h = block_hamiltonian(basis, dims, energies);
  std::vector<CMatrix> us;
  for (double t : times) us.push_back(expm_i_herm(h, t));
  return make_tomography(times, us);
}

// Distinct joint phase tuples separated by at least `gap`.
inline bool tuples_separated(const std::vector<double> &energies, const std::vector<double> &times,
                             double gap) {
  for (std::size_t a = 0; a < energies.size(); ++a) {
    for (std::size_t b = a + 1; b < energies.size(); ++b) {
      double sep = 0.0;
      for (double t : times) {
        sep = std::max(sep, std::abs(std::polar(1.0, -t * energies[a]) - std::polar(1.0, -t * energies[b])));
      }
      if (sep < gap) return false;
    }
  }
  return true;
}

inline Synthesized random_consistent_set(Rng &rng, Eigen::Index d, std::size_t m,
                                         std::int64_t q_limit = 12) {
  Synthesized s;
  s.dims = random_partition(rng, d);
  const std::vector<double> times = random_rational_times(rng, m, q_limit);
  s.basis = haar_unitary(rng, d);
  do {
    s.energies.clear();
    for (std::size_t i = 0; i < s.dims.size(); ++i) s.energies.push_back(-3.0 + 6.0 * rng.uniform());
  } while (!tuples_separated(s.energies, times, 1e-2));
  s.set = synthesize(s.basis, s.dims, s.energies, times);
  s.h = block_hamiltonian(s.basis, s.dims, s.energies);
  return s;
}

// Kraus operators read off the first block-column of a Haar unitary.
inline KrausSet random_kraus(Rng &rng, Eigen::Index n_s, Eigen::Index n_e) {
  const CMatrix iso = haar_unitary(rng, n_s * n_e).leftCols(n_s);
  KrausSet k{n_s, n_e, {}};
  for (Eigen::Index a = 0; a < n_e; ++a) {
    CMatrix e(n_s, n_s);
    for (Eigen::Index i = 0; i < n_s; ++i) e.row(i) = iso.row(i * n_e + a);
    k.operators.push_back(e);
  }
  return k;
}

}  // namespace tomocast::testing

#endif  // TOMOCAST_TESTS_FIXTURES_HPP_
