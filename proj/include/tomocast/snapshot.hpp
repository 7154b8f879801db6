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

#ifndef TOMOCAST_SNAPSHOT_HPP_
#define TOMOCAST_SNAPSHOT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tomocast/numkernel.hpp"

namespace tomocast {

struct RationalStructure;

inline constexpr double kUnitarityTol = 1e-8;
inline constexpr double kDefaultClusterTol = 1e-7;

// Measurement times 0 < tau_1 < ... < tau_M and the propagators measured at
// those times.
struct TomographySet {
  std::vector<double> times;
  std::vector<CMatrix> unitaries;

  std::size_t size() const { return times.size(); }
  Eigen::Index dim() const { return unitaries.empty() ? 0 : unitaries.front().rows(); }
};

// Throws TimeOrderError, UnitarityError or DimensionError.
void validate_tomography(const TomographySet &set);
TomographySet make_tomography(std::vector<double> times, std::vector<CMatrix> unitaries);

// JSON: {"times": [...], "unitaries": [matrix, ...]}.
TomographySet load_tomography(std::istream &in);
TomographySet load_tomography(const std::string &text);
std::string emit_tomography(const TomographySet &set);

// One maximal joint eigenspace V_i. Its basis vectors are the columns
// [offset, offset + dim) of BlockDecomposition::basis.
struct Block {
  Eigen::Index offset = 0;
  Eigen::Index dim = 0;
  std::vector<cdouble> phases;  // lambda_i^(j), one per propagator
};

struct BlockDecomposition {
  CMatrix basis;  // unitary; columns grouped block by block
  std::vector<Block> blocks;
  std::vector<std::string> warnings;

  std::size_t kappa() const { return blocks.size(); }
  Eigen::Index dim() const { return basis.rows(); }
  auto block_basis(std::size_t i) const {
    return basis.middleCols(blocks[i].offset, blocks[i].dim);
  }
};

// Decomposition with explicit basis and block sizes (phases left empty);
// useful when the block structure is known a priori.
BlockDecomposition make_decomposition(CMatrix basis, const std::vector<Eigen::Index> &dims);

// Maximal shared eigenspaces of a commuting family. Throws InconsistencyError
// when some commutator exceeds `tol`.
BlockDecomposition shared_eigenspaces(const TomographySet &set, double tol = kDefaultClusterTol,
                                      std::uint64_t seed = 0x5eedULL);

struct ConsistencyReport {
  bool consistent = false;
  std::vector<double> block_residuals;  // max_j |exp(-i tau_j h_i) - lambda_i^(j)|
  std::vector<double> block_energies;   // best branch per block
  std::vector<std::string> warnings;
  std::string message;
};

ConsistencyReport validate_consistency(const TomographySet &set, const BlockDecomposition &decomp,
                                       const RationalStructure &structure, double tol = 1e-8);

}  // namespace tomocast

#endif  // TOMOCAST_SNAPSHOT_HPP_
