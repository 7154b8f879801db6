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

#ifndef TOMOCAST_RATIONAL_HPP_
#define TOMOCAST_RATIONAL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace tomocast {

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const Fraction &, const Fraction &) = default;
};

inline constexpr std::int64_t kDefaultQMax = 64;
inline constexpr double kDefaultRationalTol = 1e-9;

// Last continued-fraction convergent of x with denominator <= q_max.
// Empty only for invalid input (x <= 0, non-finite, q_max < 1); q = 1 is
// always admissible otherwise.
std::optional<Fraction> continued_fraction(double x, std::int64_t q_max);

// Throws OverflowError when the result exceeds 2^63 - 1.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

struct RationalStructure {
  std::vector<Fraction> ratios;  // tau_j / tau_1 in lowest terms
  std::int64_t lcm_q = 0;        // LCM of the denominators; 0 when irrational
  double gamma = 0.0;            // lcm_q / tau_1; 0 when irrational
  double tau1 = 0.0;
  bool rational = false;
};

RationalStructure rationalize(const std::vector<double> &times, std::int64_t q_max = kDefaultQMax,
                              double tol = kDefaultRationalTol);

}  // namespace tomocast

#endif  // TOMOCAST_RATIONAL_HPP_
