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
#include "paircorr/quadrature.hpp"
#include "paircorr/summation.hpp"
#include "paircorr/zero_table.hpp"

namespace paircorr {

using cplx = std::complex<double>;

/// w(u) = 4 / (4 - u^2).
inline cplx weight_w(cplx u) {
  const cplx den = 4.0 - u * u;
  if (den == 0.0) throw DomainError("weight_w: pole at u = +-2");
  return 4.0 / den;
}

struct PairSumResult {
  cplx value;
  double truncation_bound = 0.0;
  std::uint64_t pairs_evaluated = 0;
  double T = 0.0;
  double x = 0.0;
};

namespace detail {

struct PairSumAccumulator {
  CompensatedComplexSum sum;
  std::uint64_t pairs = 0;
  void add(const PairSumAccumulator& o) {
    sum.add(o.sum);
    pairs += o.pairs;
  }
};

// Sum over ordered pairs (k, l), k, l < n, with |gamma_k - gamma_l| <= band of
//   c_k conj(c_l) w(delta_k + delta_l + i (gamma_k - gamma_l)),
// c_k = m_k x^{delta_k + i gamma_k}. Ascending k then l.
inline PairSumAccumulator pair_sum(const ZeroTable& table, double log_x, std::size_t n,
                                   double band, const ParallelOptions& par) {
  const auto zeros = table.zeros();
  const auto gammas = table.gammas();
  std::vector<cplx> coeff(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& z = zeros[k];
    const double mag = z.multiplicity * std::exp(z.delta * log_x);
    const double phase = z.gamma * log_x;
    coeff[k] = {mag * std::cos(phase), mag * std::sin(phase)};
  }
  const bool on_line = table.all_on_line();
  const bool full = !(band < std::numeric_limits<double>::infinity());

  return chunked_reduce<PairSumAccumulator>(
      n, par, [&](std::size_t lo, std::size_t hi, PairSumAccumulator& acc) {
        for (std::size_t k = lo; k < hi; ++k) {
          const double gk = gammas[k];
          std::size_t first = 0, last = n;
          if (!full) {
            first = static_cast<std::size_t>(
                std::lower_bound(gammas.begin(), gammas.begin() + n, gk - band) - gammas.begin());
            last = static_cast<std::size_t>(
                std::upper_bound(gammas.begin(), gammas.begin() + n, gk + band) - gammas.begin());
          }
          const cplx ck = coeff[k];
          const double dk = zeros[k].delta;
          for (std::size_t l = first; l < last; ++l) {
            const double d = gk - gammas[l];
            const cplx prod = ck * std::conj(coeff[l]);
            if (on_line) {
              acc.sum.add(prod * (4.0 / (4.0 + d * d)));
            } else {
              const double s = dk + zeros[l].delta;
              const cplx den(4.0 - s * s + d * d, -2.0 * s * d);
              acc.sum.add(prod * (4.0 / den));
            }
          }
          acc.pairs += last - first;
        }
      });
}

inline void check_pair_args(const ZeroTable& table, double x, double T) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("pair sum: x must be positive");
  if (T > table.coverage())
    throw CoverageError("pair sum: T = " + detail::format_double(T) +
                        " exceeds table coverage " + detail::format_double(table.coverage()));
}

inline PairSumResult pair_sum_log(const ZeroTable& table, double log_x, double T,
                                  std::optional<double> band, const ParallelOptions& par) {
  const std::size_t n = table.index_up_to(T);
  PairSumResult out;
  out.T = T;
  out.x = std::exp(log_x);
  if (n == 0) return out;
  const auto acc =
      pair_sum(table, log_x, n, band.value_or(std::numeric_limits<double>::infinity()), par);
  out.value = acc.sum.value();
  out.pairs_evaluated = acc.pairs;
  if (band) {
    // Omitted pairs have |gamma - gamma'| > B. Each is at most
    // x^{2 Theta - 1} * 4 / d^2 in modulus, and at most D zeros fall in any
    // unit window, so per outer zero the omitted mass is below
    // x^{2 Theta - 1} * 4 * 2 D (1/B + 1/B^2).
    const double theta = table.theta_up_to(T);
    const double D = static_cast<double>(max_unit_window_count(table, T));
    const double M = static_cast<double>(table.count_up_to(T));
    const double B = *band;
    out.truncation_bound =
        std::exp((2.0 * theta - 1.0) * log_x) * M * 8.0 * D * (1.0 / B + 1.0 / (B * B));
  }
  return out;
}

}  // namespace detail

/// F(x, T) summed over every ordered pair of zeros with 0 < gamma <= T.
inline PairSumResult f_exact(const ZeroTable& table, double x, double T,
                             const ParallelOptions& par = {}) {
  detail::check_pair_args(table, x, T);
  return detail::pair_sum_log(table, std::log(x), T, std::nullopt, par);
}

/// F(x, T) restricted to pairs with |gamma - gamma'| <= band, with a bound
/// on the omitted pairs.
inline PairSumResult f_banded(const ZeroTable& table, double x, double T, double band,
                              const ParallelOptions& par = {}) {
  if (!(band > 0.0)) throw DomainError("f_banded: band must be positive");
  detail::check_pair_args(table, x, T);
  if (x < 1.0) throw DomainError("f_banded: x must be >= 1");
  return detail::pair_sum_log(table, std::log(x), T, band, par);
}

/// Main terms of the asymptotic for F(alpha): T^{-2 alpha} log T + alpha.
inline double f_alpha_theoretical(double alpha, double T) {
  return std::exp(-2.0 * alpha * std::log(T)) * std::log(T) + alpha;
}

struct PairMode {
  std::optional<double> band;  // empty = exact

  static PairMode exact() { return {}; }
  static PairMode banded(double b) { return {b}; }
};

struct FAlphaCurve {
  double T = 0.0;
  double normalization = 0.0;  // (T / 2 pi) log T
  std::vector<double> alphas;
  std::vector<double> empirical;
  std::vector<double> theoretical;
  std::vector<double> truncation_bound;  // normalized like `empirical`
  std::vector<double> imag_part;         // normalized Im F, a roundoff diagnostic
  std::vector<std::uint64_t> pairs_evaluated;
};

inline FAlphaCurve f_alpha_curve(const ZeroTable& table, double T, std::span<const double> alphas,
                                 PairMode mode, const ParallelOptions& par = {}) {
  if (!(T >= 3.0)) throw DomainError("f_alpha_curve: T must be >= 3");
  if (T > table.coverage())
    throw CoverageError("f_alpha_curve: T exceeds table coverage");
  if (mode.band && !(*mode.band > 0.0)) throw DomainError("f_alpha_curve: band must be positive");
  FAlphaCurve c;
  c.T = T;
  const double log_t = std::log(T);
  c.normalization = T / (2.0 * std::numbers::pi) * log_t;
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("f_alpha_curve: alpha must lie in [0, 1]");
    // x = T^alpha enters only through log x = alpha log T.
    const auto r = detail::pair_sum_log(table, a * log_t, T, mode.band, par);
    c.alphas.push_back(a);
    c.empirical.push_back(r.value.real() / c.normalization);
    c.theoretical.push_back(f_alpha_theoretical(a, T));
    c.truncation_bound.push_back(r.truncation_bound / c.normalization);
    c.imag_part.push_back(r.value.imag() / c.normalization);
    c.pairs_evaluated.push_back(r.pairs_evaluated);
  }
  return c;
}

struct IntegralRepresentationReport {
  double x = 0.0;
  double T = 0.0;
  cplx pair_sum;           // f_exact
  double integral = 0.0;   // (2/pi) * integral of |sum|^2
  double certificate = 0.0;  // (2/pi) * (quadrature + tail error)
  double difference = 0.0;
  bool converged = false;
  bool passed = false;
};

/// Compares F(x, T) with (2/pi) * int_R |sum_rho x^{delta + i gamma} /
/// (1 + ((t - gamma) + i delta)^2)|^2 dt. The two agree exactly, so any gap
/// beyond `tol` plus the quadrature certificate means one side is wrong.
inline IntegralRepresentationReport verify_integral_representation(const ZeroTable& table, double x, double T, double tol,
                                  const ParallelOptions& par = {}) {
  detail::check_pair_args(table, x, T);
  if (!(tol > 0.0)) throw DomainError("verify_integral_representation: tol must be positive");
  const std::size_t n = table.index_up_to(T);
  if (n > 200) throw DomainError("verify_integral_representation: at most 200 zeros below T");

  IntegralRepresentationReport rep;
  rep.x = x;
  rep.T = T;
  rep.pair_sum = f_exact(table, x, T, par).value;

  const double log_x = std::log(x);
  const auto zeros = table.zeros();
  std::vector<cplx> coeff(n);
  double coeff_mass = 0.0, gamma_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = zeros[k].multiplicity * std::exp(zeros[k].delta * log_x);
    coeff[k] = std::polar(mag, zeros[k].gamma * log_x);
    coeff_mass += mag;
    gamma_max = std::max(gamma_max, zeros[k].gamma);
  }
  auto g = [&](double t) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx u(t - zeros[k].gamma, zeros[k].delta);
      s += coeff[k] / (1.0 + u * u);
    }
    return std::norm(s);
  };
  // For |t| >= 2 gamma_max + 2 every denominator exceeds t^2 / 4 in modulus.
  const TailBound tail{4.0, 16.0 * coeff_mass * coeff_mass, 2.0 * gamma_max + 2.0};
  const double scale = 2.0 / std::numbers::pi;
  const auto q = n ? integrate_real_line(g, tail, 0.5 * tol / scale)
                   : QuadratureResult<double>{0.0, 0.0, 0, true};
  rep.integral = scale * q.value;
  rep.certificate = scale * q.error_estimate;
  rep.converged = q.converged;
  rep.difference = std::abs(rep.integral - rep.pair_sum);
  rep.passed = rep.converged && rep.difference <= tol + rep.certificate;
  return rep;
}

struct ResidueReport {
  cplx a;
  cplx quadrature;
  cplx closed_form;
  double error_estimate = 0.0;
  bool passed = false;
};

/// int_R dt / ((1 + t^2)(1 + (t + a)^2)) against 2 pi / (4 + a^2).
inline ResidueReport verify_residue_integral(cplx a, double tol) {
  if (!(std::abs(a.imag()) < 1.0)) throw DomainError("residue integral: need |Im a| < 1");
  if (!(tol > 0.0)) throw DomainError("residue integral: tol must be positive");
  auto f = [a](double t) {
    const cplx s = t + a;
    return 1.0 / ((1.0 + t * t) * (1.0 + s * s));
  };
  // |f(t)| <= 4 / t^4 once |t| >= 2|a| + 2.
  const auto q = integrate_real_line(f, TailBound{4.0, 4.0, 2.0 * std::abs(a) + 2.0}, 0.25 * tol);
  ResidueReport rep;
  rep.a = a;
  rep.quadrature = q.value;
  rep.closed_form = 2.0 * std::numbers::pi / (4.0 + a * a);
  rep.error_estimate = q.error_estimate;
  rep.passed = q.converged && std::abs(rep.quadrature - rep.closed_form) <= tol;
  return rep;
}

}  // namespace paircorr
