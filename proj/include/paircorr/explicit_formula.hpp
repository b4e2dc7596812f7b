// Copyright 2026 The paircorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/summation.hpp"
#include "paircorr/zero_table.hpp"

namespace paircorr {

/// Lambda(n) for 1 <= n <= limit; index 0 is unused.
class VonMangoldtTable {
 public:
  VonMangoldtTable() = default;
  explicit VonMangoldtTable(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t limit() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  double operator()(std::size_t n) const { return values_.at(n); }
  std::span<const double> values() const noexcept { return values_; }

  double chebyshev_psi(std::size_t N) const {
    CompensatedSum s;
    for (std::size_t n = 2; n <= std::min(N, limit()); ++n) s.add(values_[n]);
    return s.value();
  }

 private:
  std::vector<double> values_;
};

/// Sieve of Eratosthenes; every prime power p^k <= limit gets log p.
inline VonMangoldtTable sieve_von_mangoldt(std::size_t limit) {
  if (limit < 2) throw DomainError("sieve_von_mangoldt: limit must be >= 2");
  if (limit > static_cast<std::size_t>(std::numeric_limits<std::uint32_t>::max()))
    throw DomainError("sieve_von_mangoldt: limit too large");
  std::vector<double> lam(limit + 1, 0.0);
  std::vector<bool> composite(limit + 1, false);
  for (std::size_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p * p; m <= limit; m += p) composite[m] = true;
    const double lp = std::log(static_cast<double>(p));
    for (std::size_t q = p;; q *= p) {
      lam[q] = lp;
      if (q > limit / p) break;
    }
  }
  return VonMangoldtTable(std::move(lam));
}

struct TruncatedSum {
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// sum over zeros rho (and their conjugates) with |gamma| <= gamma_cutoff of
///   2 x^{delta + i(gamma - t)} / (1 + ((t - gamma) + i delta)^2).
/// The tail bound follows x^{Theta - 1/2} log Z / (Z - |t|) with an explicit
/// zero-density factor.
inline TruncatedSum lhs_zero_sum(const ZeroTable& table, double x, double t,
                                 double gamma_cutoff) {
  if (!(x >= 1.0)) throw DomainError("lhs_zero_sum: x must be >= 1");
  if (gamma_cutoff > table.coverage())
    throw CoverageError("lhs_zero_sum: cutoff exceeds table coverage");
  const double log_x = std::log(x);
  const std::size_t n = table.index_up_to(gamma_cutoff);
  const auto zeros = table.zeros();
  CompensatedComplexSum s;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& z = zeros[k];
    for (double g : {z.gamma, -z.gamma}) {
      const std::complex<double> u(t - g, z.delta);
      const std::complex<double> num =
          2.0 * z.multiplicity * std::exp(std::complex<double>(z.delta, g - t) * log_x);
      s.add(num / (1.0 + u * u));
    }
  }
  TruncatedSum out{s.value(), 0.0};
  const double Z = gamma_cutoff;
  if (Z > std::abs(t) + 2.0) {
    const double theta = n ? table.theta_up_to(Z) : 0.5;
    // Each side: sum_{gamma > Z} 2 / ((gamma - |t|)^2 - 1), zero density
    // at most log(u) / 2 pi + 1 per unit interval above Z.
    const double density = std::log(Z) / (2.0 * std::numbers::pi) + 1.0;
    out.tail_bound = 2.0 * std::exp((theta - 0.5) * log_x) * 2.0 * 2.0 *
                     (density + 1.0 / (2.0 * std::numbers::pi)) / (Z - std::abs(t) - 1.0);
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

/// -sum_{n <= N} Lambda(n) n^{-1/2 - it} min(n/x, x/n) + log(|t| + 2) / x.
/// The omitted n > N are bounded using psi(u) <= 1.03883 u.
inline TruncatedSum rhs_main(const VonMangoldtTable& vm, double x, double t,
                             std::size_t n_cutoff) {
  if (!(x >= 1.0)) throw DomainError("rhs_main: x must be >= 1");
  if (n_cutoff > vm.limit()) throw CoverageError("rhs_main: n_cutoff exceeds sieve limit");
  if (static_cast<double>(n_cutoff) < x)
    throw DomainError("rhs_main: n_cutoff below x gives an unreliable truncation");
  const auto lam = vm.values();
  CompensatedComplexSum s;
  for (std::size_t n = 2; n <= n_cutoff; ++n) {
    if (lam[n] == 0.0) continue;
    const double dn = static_cast<double>(n);
    const double weight = std::min(dn / x, x / dn);
    const double ln = std::log(dn);
    const double mag = lam[n] * weight / std::sqrt(dn);
    s.add(std::complex<double>(-mag * std::cos(t * ln), mag * std::sin(t * ln)));
  }
  s.add(std::complex<double>(std::log(std::abs(t) + 2.0) / x, 0.0));
  const double tail = 1.5 * 1.03883 * 2.0 * x / std::sqrt(static_cast<double>(n_cutoff));
  return {s.value(), tail};
}

struct ExplicitBudget {
  double c1 = 10.0;  // x^{-1}
  double c2 = 10.0;  // x^{1/2} / (1 + t^2)
  double c3 = 10.0;  // x^{-5/2} / (|t| + 2)
};

struct ExplicitFormulaResidual {
  double x = 0.0;
  double t = 0.0;
  std::complex<double> lhs;
  std::complex<double> rhs_main;
  std::complex<double> residual;
  double envelope = 0.0;
  bool near_zero = false;  // t within 1e-6 of a tabulated ordinate; not evaluated
  bool passed = false;
};

struct ExplicitGridPoint {
  double x;
  double t;
};

struct ExplicitOptions {
  std::optional<double> gamma_cutoff;     // default: table coverage
  std::optional<std::size_t> n_cutoff;    // default: sieve limit
};

/// Both sides of the explicit formula on a grid, with the residual judged
/// against C1/x + C2 sqrt(x)/(1+t^2) + C3 x^{-5/2}/(|t|+2) plus both
/// truncation bounds.
inline std::vector<ExplicitFormulaResidual> residual_report(
    const ZeroTable& table, const VonMangoldtTable& vm, std::span<const ExplicitGridPoint> grid,
    const ExplicitBudget& budget, const ExplicitOptions& opts = {}) {
  const double cutoff = opts.gamma_cutoff.value_or(table.coverage());
  const std::size_t n_cut = opts.n_cutoff.value_or(vm.limit());
  std::vector<ExplicitFormulaResidual> out;
  out.reserve(grid.size());
  for (const auto& p : grid) {
    ExplicitFormulaResidual r;
    r.x = p.x;
    r.t = p.t;
    const std::size_t i = table.index_up_to(std::abs(p.t));
    const auto g = table.gammas();
    const bool near = (i > 0 && std::abs(std::abs(p.t) - g[i - 1]) < 1e-6) ||
                      (i < g.size() && std::abs(g[i] - std::abs(p.t)) < 1e-6);
    if (near) {
      r.near_zero = true;
      out.push_back(r);
      continue;
    }
    const auto lhs = lhs_zero_sum(table, p.x, p.t, cutoff);
    const auto rhs = rhs_main(vm, p.x, p.t, n_cut);
    r.lhs = lhs.value;
    r.rhs_main = rhs.value;
    r.residual = lhs.value - rhs.value;
    r.envelope = budget.c1 / p.x + budget.c2 * std::sqrt(p.x) / (1.0 + p.t * p.t) +
                 budget.c3 * std::pow(p.x, -2.5) / (std::abs(p.t) + 2.0) + lhs.tail_bound +
                 rhs.tail_bound;
    r.passed = std::abs(r.residual) <= r.envelope;
    out.push_back(r);
  }
  return out;
}

}  // namespace paircorr
