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

#ifndef TOMOCAST_TESTS_SERIES_HPP_
#define TOMOCAST_TESTS_SERIES_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>

#include "tomocast/distributions.hpp"

namespace tomocast::testing {

// Symmetric pmf summed directly out to |k| <= K.
inline double direct_sum(const PriorDistribution &d, double t, std::int64_t K) {
  double acc = d.pmf(0);
  for (std::int64_t k = 1; k <= K; ++k) acc += 2.0 * d.pmf(k) * std::cos(static_cast<double>(k) * t);
  return acc;
}

// Cauchy series with the a/k^2 part summed in closed form:
// sum_{k>=1} cos(kt)/k^2 = pi^2/6 - pi t/2 + t^2/4 on [0, 2 pi].
inline double cauchy_kummer(double a, double t, std::int64_t K) {
  constexpr double pi = std::numbers::pi;
  const double tw = t - 2.0 * pi * std::floor(t / (2.0 * pi));
  const double clausen = pi * pi / 6.0 - pi * tw / 2.0 + tw * tw / 4.0;
  double rest = 0.0;
  for (std::int64_t k = K; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    rest += -a * a * a / (kk * kk * (a * a + kk * kk)) * std::cos(kk * tw);
  }
  const double series = 1.0 / a + 2.0 * (a * clausen + rest);
  return std::tanh(a * pi) / pi * series;
}

// Reference value of phi(t) for any built-in family.
inline double reference_char_fn(const PriorDistribution &d, double t) {
  if (d.family() == Family::CauchyLorentz) return cauchy_kummer(d.a(), t, 20000);
  return direct_sum(d, t, d.tail_truncation(1e-10));
}

}  // namespace tomocast::testing

#endif  // TOMOCAST_TESTS_SERIES_HPP_
