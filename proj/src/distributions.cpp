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

#include "tomocast/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tomocast/errors.hpp"

namespace tomocast {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// exp(-x) underflows to zero in double beyond this.
constexpr double kExpCutoff = 745.0;
constexpr std::int64_t kMaxFiniteM = 50'000'000;

// Reduces t into [-pi, pi).
double wrap_pi(double t) { return t - kTwoPi * std::floor((t + kPi) / kTwoPi); }

double require_positive(double a, const char *family) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DistributionError(std::string(family) + ": parameter a must be positive and finite");
  }
  return a;
}

std::int64_t require_m(std::int64_t m, const char *family) {
  if (m < 0 || m > kMaxFiniteM) {
    throw DistributionError(std::string(family) + ": parameter m must be in [0, " +
                            std::to_string(kMaxFiniteM) + "]");
  }
  return m;
}

// Gaussian lattice sum Z(a) = sum_k exp(-a k^2), switching to the Poisson
// dual sqrt(pi/a) sum_n exp(-pi^2 n^2 / a) where that converges faster.
double gaussian_lattice_sum(double a) {
  double z = 1.0;
  if (a >= 1.0) {
    for (std::int64_t k = 1; a * static_cast<double>(k * k) < kExpCutoff; ++k) {
      z += 2.0 * std::exp(-a * static_cast<double>(k * k));
    }
    return z;
  }
  double dual = 1.0;
  for (std::int64_t n = 1; kPi * kPi * static_cast<double>(n * n) / a < kExpCutoff; ++n) {
    dual += 2.0 * std::exp(-kPi * kPi * static_cast<double>(n * n) / a);
  }
  return std::sqrt(kPi / a) * dual;
}

double cauchy_prefactor(double a) { return std::tanh(a * kPi) / kPi; }

// Probability that round(X) == k for a continuous Cauchy X of scale a.
double cauchy_cell(double a, std::int64_t k) {
  const double kk = static_cast<double>(k);
  const double hi = (kk + 0.5) / a;
  const double lo = (kk - 0.5) / a;
  if (k == 0) return (std::atan(hi) - std::atan(lo)) / kPi;
  // atan(x) - atan(y) = atan((x - y) / (1 + x y)) for x y > -1.
  return std::atan((hi - lo) / (1.0 + hi * lo)) / kPi;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Delta: return "delta";
    case Family::Exponential: return "exponential";
    case Family::TruncatedUniform: return "truncated_uniform";
    case Family::Semicircular: return "semicircular";
    case Family::CauchyLorentz: return "cauchy_lorentz";
    case Family::Binomial: return "binomial";
    case Family::Normal: return "normal";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::tolower(c));
  });
  if (s == "delta") return Family::Delta;
  if (s == "exponential") return Family::Exponential;
  if (s == "truncated_uniform" || s == "uniform") return Family::TruncatedUniform;
  if (s == "semicircular" || s == "semicircle") return Family::Semicircular;
  if (s == "cauchy_lorentz" || s == "cauchy" || s == "lorentz") return Family::CauchyLorentz;
  if (s == "binomial") return Family::Binomial;
  if (s == "normal" || s == "gaussian") return Family::Normal;
  if (s == "custom") return Family::Custom;
  throw DistributionError("unknown distribution family '" + std::string(name) + "'");
}

PriorDistribution PriorDistribution::delta() {
  PriorDistribution d;
  d.family_ = Family::Delta;
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::exponential(double a) {
  PriorDistribution d;
  d.family_ = Family::Exponential;
  d.a_ = require_positive(a, "exponential");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::truncated_uniform(std::int64_t m) {
  PriorDistribution d;
  d.family_ = Family::TruncatedUniform;
  d.m_ = require_m(m, "truncated_uniform");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::semicircular(std::int64_t m) {
  PriorDistribution d;
  d.family_ = Family::Semicircular;
  d.m_ = require_m(m, "semicircular");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::cauchy_lorentz(double a) {
  PriorDistribution d;
  d.family_ = Family::CauchyLorentz;
  d.a_ = require_positive(a, "cauchy_lorentz");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::binomial(std::int64_t m) {
  PriorDistribution d;
  d.family_ = Family::Binomial;
  d.m_ = require_m(m, "binomial");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::normal(double a) {
  PriorDistribution d;
  d.family_ = Family::Normal;
  d.a_ = require_positive(a, "normal");
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::custom(const std::map<std::int64_t, double> &weights) {
  if (weights.empty()) throw DistributionError("custom: empty weight table");
  double total = 0.0;
  for (const auto &[k, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DistributionError("custom: weight for k = " + std::to_string(k) +
                              " is negative or not finite");
    }
    total += w;
  }
  if (!(total > 0.0)) throw DistributionError("custom: weights sum to zero");
  const std::int64_t lo = weights.begin()->first;
  const std::int64_t hi = weights.rbegin()->first;
  if (hi - lo > kMaxFiniteM) throw DistributionError("custom: support too wide");
  PriorDistribution d;
  d.family_ = Family::Custom;
  d.table_lo_ = lo;
  d.table_.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto &[k, w] : weights) d.table_[static_cast<std::size_t>(k - lo)] = w / total;
  d.build_table();
  return d;
}

PriorDistribution PriorDistribution::from_name(std::string_view name, double a, std::int64_t m) {
  switch (parse_family(name)) {
    case Family::Delta: return delta();
    case Family::Exponential: return exponential(a);
    case Family::TruncatedUniform: return truncated_uniform(m);
    case Family::Semicircular: return semicircular(m);
    case Family::CauchyLorentz: return cauchy_lorentz(a);
    case Family::Binomial: return binomial(m);
    case Family::Normal: return normal(a);
    case Family::Custom: break;
  }
  throw DistributionError("custom distributions need an explicit weight table");
}

void PriorDistribution::build_table() {
  switch (family_) {
    case Family::Delta:
      table_lo_ = 0;
      table_ = {1.0};
      break;
    case Family::TruncatedUniform:
      table_lo_ = -m_;
      table_.assign(static_cast<std::size_t>(2 * m_ + 1), 1.0 / static_cast<double>(2 * m_ + 1));
      break;
    case Family::Semicircular: {
      table_lo_ = -m_;
      table_.resize(static_cast<std::size_t>(2 * m_ + 1));
      const double r2 = static_cast<double>((m_ + 1) * (m_ + 1));
      double sum = 0.0;
      for (std::int64_t k = -m_; k <= m_; ++k) {
        const double w = std::sqrt(r2 - static_cast<double>(k * k));
        table_[static_cast<std::size_t>(k + m_)] = w;
        sum += w;
      }
      norm_ = sum;
      for (double &w : table_) w /= sum;
      break;
    }
    case Family::Binomial: {
      table_lo_ = -m_;
      table_.resize(static_cast<std::size_t>(2 * m_ + 1));
      // Central term prod_{i<=m} (2i-1)/(2i), then P(k+1) = P(k) (m-k)/(m+k+1).
      double p = 1.0;
      for (std::int64_t i = 1; i <= m_; ++i) {
        p *= static_cast<double>(2 * i - 1) / static_cast<double>(2 * i);
      }
      table_[static_cast<std::size_t>(m_)] = p;
      for (std::int64_t k = 0; k < m_; ++k) {
        p *= static_cast<double>(m_ - k) / static_cast<double>(m_ + k + 1);
        table_[static_cast<std::size_t>(m_ + k + 1)] = p;
        table_[static_cast<std::size_t>(m_ - k - 1)] = p;
      }
      break;
    }
    case Family::Exponential:
    case Family::Normal: {
      if (family_ == Family::Normal) norm_ = gaussian_lattice_sum(a_);
      // Sampling table out to a tail far below double resolution.
      const std::int64_t K = tail_truncation(1e-18);
      table_lo_ = -K;
      table_.resize(static_cast<std::size_t>(2 * K + 1));
      for (std::int64_t k = -K; k <= K; ++k) table_[static_cast<std::size_t>(k + K)] = pmf(k);
      break;
    }
    case Family::CauchyLorentz: {
      table_.clear();
      double worst = 1.0;
      for (std::int64_t k = 0; k <= 1000; ++k) worst = std::max(worst, pmf(k) / cauchy_cell(a_, k));
      cauchy_envelope_ = 1.01 * worst;
      break;
    }
    case Family::Custom:
      break;
  }
  cdf_.resize(table_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    acc += table_[i];
    cdf_[i] = acc;
  }
}

bool PriorDistribution::finite_support() const {
  return family_ != Family::Exponential && family_ != Family::CauchyLorentz &&
         family_ != Family::Normal;
}

std::string PriorDistribution::describe() const {
  std::ostringstream s;
  s << family_name(family_);
  switch (family_) {
    case Family::Exponential:
    case Family::CauchyLorentz:
    case Family::Normal: s << "(a=" << a_ << ")"; break;
    case Family::TruncatedUniform:
    case Family::Semicircular:
    case Family::Binomial: s << "(m=" << m_ << ")"; break;
    default: break;
  }
  return s.str();
}

double PriorDistribution::pmf(std::int64_t k) const {
  switch (family_) {
    case Family::Exponential:
      return std::tanh(0.5 * a_) * std::exp(-a_ * std::fabs(static_cast<double>(k)));
    case Family::CauchyLorentz: {
      const double kk = static_cast<double>(k);
      return cauchy_prefactor(a_) * a_ / (a_ * a_ + kk * kk);
    }
    case Family::Normal: {
      const double kk = static_cast<double>(k);
      return std::exp(-a_ * kk * kk) / norm_;
    }
    default: {
      const std::int64_t idx = k - table_lo_;
      if (idx < 0 || idx >= static_cast<std::int64_t>(table_.size())) return 0.0;
      return table_[static_cast<std::size_t>(idx)];
    }
  }
}

cdouble PriorDistribution::char_fn(double t) const {
  switch (family_) {
    case Family::Delta: return 1.0;
    case Family::Exponential: {
      // (cosh a - 1)/(cosh a - cos t), divided through by cosh a.
      const double sech = 1.0 / std::cosh(a_);
      return (1.0 - sech) / (1.0 - std::cos(t) * sech);
    }
    case Family::TruncatedUniform: {
      const double n = static_cast<double>(2 * m_ + 1);
      const double s = std::sin(0.5 * t);
      if (std::fabs(s) > 1e-4) return std::sin(0.5 * n * t) / (n * s);
      double acc = 1.0;
      for (std::int64_t k = 1; k <= m_; ++k) acc += 2.0 * std::cos(static_cast<double>(k) * t);
      return acc / n;
    }
    case Family::Binomial: {
      return std::pow(0.5 * (1.0 + std::cos(t)), static_cast<double>(m_));
    }
    case Family::CauchyLorentz: {
      // sum_k a e^{ikt}/(a^2+k^2) = pi cosh(a(pi - t))/sinh(a pi) on [0, 2 pi],
      // written with decaying exponentials so large a does not overflow.
      const double u = std::fabs(wrap_pi(t));  // |pi - t'| for t' = t mod 2 pi
      const double x = kPi - u;
      return std::exp(-a_ * u) * (1.0 + std::exp(-2.0 * a_ * x)) / (1.0 + std::exp(-2.0 * a_ * kPi));
    }
    case Family::Normal: {
      if (a_ >= kPi) {
        double acc = 1.0;
        for (std::int64_t k = 1; a_ * static_cast<double>(k * k) < kExpCutoff; ++k) {
          acc += 2.0 * std::exp(-a_ * static_cast<double>(k * k)) *
                 std::cos(static_cast<double>(k) * t);
        }
        return acc / norm_;
      }
      // Poisson dual: theta function summed over images of t.
      const double tw = wrap_pi(t);
      double num = 0.0;
      double den = 0.0;
      const auto reach = static_cast<std::int64_t>(std::sqrt(4.0 * a_ * kExpCutoff) / kTwoPi) + 2;
      for (std::int64_t n = -reach; n <= reach; ++n) {
        const double shift = kTwoPi * static_cast<double>(n);
        num += std::exp(-(tw - shift) * (tw - shift) / (4.0 * a_));
        den += std::exp(-shift * shift / (4.0 * a_));
      }
      return num / den;
    }
    case Family::Semicircular:
    case Family::Custom: {
      cdouble acc = 0.0;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] == 0.0) continue;
        const double k = static_cast<double>(table_lo_ + static_cast<std::int64_t>(i));
        acc += table_[i] * std::polar(1.0, k * t);
      }
      return acc;
    }
  }
  return 1.0;
}

double PriorDistribution::tail_mass(std::int64_t K) const {
  if (K < 0) return 1.0;
  switch (family_) {
    case Family::Exponential:
      return 2.0 * std::tanh(0.5 * a_) * std::exp(-a_ * static_cast<double>(K + 1)) /
             (-std::expm1(-a_));
    case Family::CauchyLorentz:
      if (K == 0) return 1.0 - pmf(0);
      return 2.0 * cauchy_prefactor(a_) * std::atan(a_ / static_cast<double>(K));
    case Family::Normal: {
      const double k1 = static_cast<double>(K + 1);
      return 2.0 * std::exp(-a_ * k1 * k1) / (-std::expm1(-2.0 * a_ * k1)) / norm_;
    }
    default: {
      double acc = 0.0;
      for (std::size_t i = 0; i < table_.size(); ++i) {
        const std::int64_t k = table_lo_ + static_cast<std::int64_t>(i);
        if (k > K || k < -K) acc += table_[i];
      }
      return acc;
    }
  }
}

std::int64_t PriorDistribution::tail_truncation(double eps) const {
  if (!(eps > 0.0)) throw DistributionError("tail_truncation: eps must be positive");
  switch (family_) {
    case Family::Delta: return 0;
    case Family::TruncatedUniform:
    case Family::Semicircular:
    case Family::Binomial: return m_;
    case Family::Custom: return std::max(std::abs(table_lo_),
                                         std::abs(table_lo_ + static_cast<std::int64_t>(table_.size()) - 1));
    case Family::Exponential: {
      // Geometric bound on sum_{|k| >= K}: 2 tanh(a/2) e^{-aK} / (1 - e^{-a}).
      const double lead = 2.0 * std::tanh(0.5 * a_) / (-std::expm1(-a_));
      auto bound = [&](std::int64_t K) { return lead * std::exp(-a_ * static_cast<double>(K)); };
      auto K = static_cast<std::int64_t>(std::max(0.0, std::ceil(std::log(lead / eps) / a_)));
      while (K > 0 && bound(K - 1) <= eps) --K;
      while (bound(K) > eps) ++K;
      return K;
    }
    case Family::CauchyLorentz: {
      if (eps >= 1.0) return 0;
      const double c2 = 2.0 * cauchy_prefactor(a_);
      const double guess = a_ / std::tan(std::min(eps / c2, 0.5 * kPi));
      if (guess > 1e17) throw OverflowError("tail_truncation: Cauchy tail bound out of range");
      auto K = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(guess)));
      while (K > 1 && tail_mass(K - 1) <= eps) --K;
      while (tail_mass(K) > eps) ++K;
      return K;
    }
    case Family::Normal: {
      std::int64_t K = 0;
      while (tail_mass(K) > eps) ++K;
      return K;
    }
  }
  return 0;
}

std::int64_t PriorDistribution::draw(Rng &rng) const {
  if (family_ == Family::Delta) return 0;
  if (family_ == Family::CauchyLorentz) {
    // Rejection from a rounded continuous Cauchy of the same scale.
    for (;;) {
      const double x = a_ * std::tan(kPi * (rng.uniform() - 0.5));
      if (!(std::fabs(x) < 4e18)) continue;
      const std::int64_t k = std::llround(x);
      const double accept = pmf(k) / (cauchy_envelope_ * cauchy_cell(a_, k));
      if (rng.uniform() < accept) return k;
    }
  }
  const double u = rng.uniform() * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return table_lo_ + static_cast<std::int64_t>(it - cdf_.begin());
}

double pmf(const PriorDistribution &dist, std::int64_t k) { return dist.pmf(k); }
cdouble char_fn(const PriorDistribution &dist, double t) { return dist.char_fn(t); }
std::int64_t tail_truncation(const PriorDistribution &dist, double eps) {
  return dist.tail_truncation(eps);
}

std::vector<std::int64_t> sample_k(const PriorDistribution &dist, std::size_t n,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> out(n);
  for (auto &k : out) k = dist.draw(rng);
  return out;
}

}  // namespace tomocast
