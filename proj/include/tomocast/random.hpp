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

#ifndef TOMOCAST_RANDOM_HPP_
#define TOMOCAST_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "tomocast/numkernel.hpp"

namespace tomocast {

// Mixes a seed with a stream index so independent consumers (shards,
// blocks, trials) get decorrelated engines from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded engine with platform-independent uniform and normal draws.
// The standard distributions are implementation-defined, so we do not use
// them anywhere a seed is part of a reproducibility contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  cdouble complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary: complex Ginibre matrix, Householder QR, then
// Q * diag(r_ii / |r_ii|) so the distribution is invariant.
CMatrix haar_unitary(Rng &rng, Eigen::Index n);

// Random Hermitian matrix with i.i.d. complex normal entries (GUE-like).
CMatrix random_hermitian(Rng &rng, Eigen::Index n);

// Arbitrary complex matrix with i.i.d. complex normal entries.
CMatrix random_complex(Rng &rng, Eigen::Index rows, Eigen::Index cols);

// Random density matrix (Ginibre-induced).
CMatrix random_density(Rng &rng, Eigen::Index n);

}  // namespace tomocast

#endif  // TOMOCAST_RANDOM_HPP_
