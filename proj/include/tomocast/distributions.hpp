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

#ifndef TOMOCAST_DISTRIBUTIONS_HPP_
#define TOMOCAST_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tomocast/numkernel.hpp"
#include "tomocast/random.hpp"

namespace tomocast {

enum class Family {
  Delta,
  Exponential,
  TruncatedUniform,
  Semicircular,
  CauchyLorentz,
  Binomial,
  Normal,
  Custom,
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);  // throws DistributionError

// Prior on the integer lattice offsets k of the admissible Hamiltonians.
// Immutable; every member is safe to call concurrently.
//
//   Exponential       P(k) = (cosh a - 1)/sinh a * exp(-a|k|)
//   TruncatedUniform  P(k) = 1/(2m+1) for |k| <= m
//   Semicircular      P(k) ~ sqrt((m+1)^2 - k^2) for |k| <= m
//   CauchyLorentz     P(k) = tanh(a pi)/pi * a/(a^2 + k^2)
//   Binomial          P(k) = 4^-m C(2m, k+m) for |k| <= m
//   Normal            P(k) ~ exp(-a k^2)
class PriorDistribution {
 public:
  static PriorDistribution delta();
  static PriorDistribution exponential(double a);
  static PriorDistribution truncated_uniform(std::int64_t m);
  static PriorDistribution semicircular(std::int64_t m);
  static PriorDistribution cauchy_lorentz(double a);
  static PriorDistribution binomial(std::int64_t m);
  static PriorDistribution normal(double a);
  // Finite weight table; weights are normalized. Negative or all-zero
  // weights throw DistributionError.
  static PriorDistribution custom(const std::map<std::int64_t, double> &weights);
  // Family chosen by name; `a` and `m` are read only where the family uses them.
  static PriorDistribution from_name(std::string_view name, double a, std::int64_t m);

  Family family() const { return family_; }
  double a() const { return a_; }
  std::int64_t m() const { return m_; }
  bool finite_support() const;
  std::string describe() const;

  double pmf(std::int64_t k) const;
  // phi(t) = sum_k P(k) exp(i t k); 2 pi periodic.
  cdouble char_fn(double t) const;
  // Smallest K with sum_{|k| > K} P(k) <= eps (a rigorous upper bound is
  // used for the infinite families).
  std::int64_t tail_truncation(double eps) const;
  // Upper bound on sum_{|k| > K} P(k).
  double tail_mass(std::int64_t K) const;

  std::int64_t draw(Rng &rng) const;

 private:
  PriorDistribution() = default;
  void build_table();

  Family family_ = Family::Delta;
  double a_ = 0.0;
  std::int64_t m_ = 0;
  double norm_ = 1.0;  // Semicircular and Normal normalizers
  // Probabilities on [table_lo_, table_lo_ + size) and their running sums,
  // used for pmf lookup of finite families and inverse-CDF sampling.
  std::int64_t table_lo_ = 0;
  std::vector<double> table_;
  std::vector<double> cdf_;
  double cauchy_envelope_ = 1.0;
};

double pmf(const PriorDistribution &dist, std::int64_t k);
cdouble char_fn(const PriorDistribution &dist, double t);
std::int64_t tail_truncation(const PriorDistribution &dist, double eps);
std::vector<std::int64_t> sample_k(const PriorDistribution &dist, std::size_t n,
                                   std::uint64_t seed);

}  // namespace tomocast

#endif  // TOMOCAST_DISTRIBUTIONS_HPP_
