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

#include "tomocast/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "tomocast/errors.hpp"

namespace tomocast {

std::optional<Fraction> continued_fraction(double x, std::int64_t q_max) {
  if (!(x > 0.0) || !std::isfinite(x) || q_max < 1) return std::nullopt;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();

  // Convergent recurrences h_n = a_n h_{n-1} + h_{n-2}, k_n likewise.
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  Fraction best{0, 1};
  long double y = x;
  for (int iter = 0; iter < 96; ++iter) {
    const long double fl = std::floor(y);
    if (fl > static_cast<long double>(kMax)) break;
    const auto a = static_cast<std::int64_t>(fl);
    std::int64_t h = 0, k = 0;
    if (__builtin_mul_overflow(a, h_prev, &h) || __builtin_add_overflow(h, h_prev2, &h) ||
        __builtin_mul_overflow(a, k_prev, &k) || __builtin_add_overflow(k, k_prev2, &k)) {
      break;
    }
    if (k > q_max) break;
    best = {h, k};
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    // Stop once the convergent reproduces x to working precision; further
    // partial quotients would only describe rounding noise.
    const long double err = std::fabs(static_cast<long double>(x) * k - h);
    if (err <= 4.0L * std::numeric_limits<double>::epsilon() * x * k) break;
    const long double frac = y - fl;
    if (frac <= 0.0L) break;
    y = 1.0L / frac;
  }
  return best;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw ConfigError("checked_lcm: arguments must be positive");
  const std::int64_t g = std::gcd(a, b);
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw OverflowError("LCM of denominators exceeds 2^63 - 1");
  }
  return out;
}

RationalStructure rationalize(const std::vector<double> &times, std::int64_t q_max, double tol) {
  if (times.empty()) throw ConfigError("rationalize: no times");
  if (q_max < 1 || !(tol > 0.0)) throw ConfigError("rationalize: q_max >= 1 and tol > 0 required");
  RationalStructure s;
  s.tau1 = times.front();
  if (!(s.tau1 > 0.0)) throw TimeOrderError("rationalize: times must be positive");
  s.rational = true;
  s.ratios.reserve(times.size());
  s.ratios.push_back({1, 1});
  for (std::size_t j = 1; j < times.size(); ++j) {
    const double ratio = times[j] / s.tau1;
    const auto f = continued_fraction(ratio, q_max);
    if (!f || std::fabs(ratio - f->value()) > tol * ratio) {
      s.rational = false;
      s.ratios.push_back(f.value_or(Fraction{0, 1}));
      continue;
    }
    const Fraction &prev = s.ratios.back();
    // Two distinct times collapsing onto one fraction cannot be rational at
    // this tolerance: the ratios must stay strictly increasing.
    if (static_cast<__int128>(f->p) * prev.q <= static_cast<__int128>(prev.p) * f->q) {
      s.rational = false;
    }
    s.ratios.push_back(*f);
  }
  if (!s.rational) return s;
  std::int64_t q = 1;
  for (const Fraction &f : s.ratios) q = checked_lcm(q, f.q);
  s.lcm_q = q;
  s.gamma = static_cast<double>(q) / s.tau1;
  return s;
}

}  // namespace tomocast
