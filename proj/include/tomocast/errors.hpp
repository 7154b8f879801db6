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

#ifndef TOMOCAST_ERRORS_HPP_
#define TOMOCAST_ERRORS_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tomocast {

// Root of every exception thrown by the library. `kind()` is a stable
// machine-readable tag used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char *kind() const noexcept { return "Error"; }
};

#define TOMOCAST_SIMPLE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char *kind() const noexcept override { return #Name; }     \
  };

TOMOCAST_SIMPLE_ERROR(DimensionError)
TOMOCAST_SIMPLE_ERROR(HermiticityError)
TOMOCAST_SIMPLE_ERROR(ParseError)
TOMOCAST_SIMPLE_ERROR(TimeOrderError)
TOMOCAST_SIMPLE_ERROR(OverflowError)
TOMOCAST_SIMPLE_ERROR(ConfigError)
TOMOCAST_SIMPLE_ERROR(DistributionError)
TOMOCAST_SIMPLE_ERROR(StateError)
TOMOCAST_SIMPLE_ERROR(BudgetError)

#undef TOMOCAST_SIMPLE_ERROR

class UnitarityError : public Error {
 public:
  UnitarityError(std::size_t index, double residual)
      : Error("propagator " + std::to_string(index) +
              " is not unitary (residual " + std::to_string(residual) + ")"),
        index(index),
        residual(residual) {}
  const char *kind() const noexcept override { return "UnitarityError"; }

  std::size_t index;
  double residual;
};

class InconsistencyError : public Error {
 public:
  InconsistencyError(std::size_t j, std::size_t k, double norm)
      : Error("propagators " + std::to_string(j) + " and " + std::to_string(k) +
              " do not commute (commutator norm " + std::to_string(norm) + ")"),
        j(j),
        k(k),
        norm(norm) {}
  const char *kind() const noexcept override { return "InconsistencyError"; }

  std::size_t j;
  std::size_t k;
  double norm;
};

class NotConsistentError : public Error {
 public:
  NotConsistentError(std::size_t block, double best_residual)
      : Error("no logarithm branch reproduces block " + std::to_string(block) +
              " (best residual " + std::to_string(best_residual) + ")"),
        block(block),
        best_residual(best_residual) {}
  const char *kind() const noexcept override { return "NotConsistentError"; }

  std::size_t block;
  double best_residual;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(std::int64_t best_r, double best_residual)
      : Error("no multiplier within the search bound reaches epsilon (best r = " +
              std::to_string(best_r) + ", residual " + std::to_string(best_residual) +
              ")"),
        best_r(best_r),
        best_residual(best_residual) {}
  const char *kind() const noexcept override { return "SearchExhausted"; }

  std::int64_t best_r;
  double best_residual;
};

class KrausError : public Error {
 public:
  explicit KrausError(double residual)
      : Error("Kraus operators violate completeness (residual " +
              std::to_string(residual) + ")"),
        residual(residual) {}
  const char *kind() const noexcept override { return "KrausError"; }

  double residual;
};

}  // namespace tomocast

#endif  // TOMOCAST_ERRORS_HPP_
