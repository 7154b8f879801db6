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

#include "tomocast/random.hpp"

#include <cmath>
#include <numbers>

namespace tomocast {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the logarithm argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cdouble Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix random_complex(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = rng.complex_normal();
  }
  return z;
}

CMatrix haar_unitary(Rng &rng, Eigen::Index n) {
  const CMatrix z = random_complex(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix &r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cdouble d = r(k, k);
    const double mag = std::abs(d);
    // r_kk == 0 has probability zero; leave the column alone if it happens.
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

CMatrix random_hermitian(Rng &rng, Eigen::Index n) {
  const CMatrix z = random_complex(rng, n, n);
  return 0.5 * (z + z.adjoint());
}

CMatrix random_density(Rng &rng, Eigen::Index n) {
  const CMatrix z = random_complex(rng, n, n);
  CMatrix rho = z * z.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace tomocast
