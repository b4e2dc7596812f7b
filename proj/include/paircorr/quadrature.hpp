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
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/summation.hpp"

namespace paircorr {

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

struct QuadratureOptions {
  std::size_t max_panels = 1'000'000;
  // Uniform panels to start from on finite intervals. More panels make it
  // harder for a narrow feature to slip between the first 15 samples.
  std::size_t initial_panels = 1;
};

/// |f(t)| <= constant / |t|^exponent for |t| >= valid_from.
struct TailBound {
  double exponent = 2.0;
  double constant = 1.0;
  double valid_from = 0.0;
};

namespace detail {

// Kronrod 15-point abscissae on [0,1] (symmetric) with the embedded 7-point
// Gauss rule on the odd-indexed nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
bool all_finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  if (!all_finite(fc)) throw NumericalError("quadrature: non-finite integrand value");
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    if (!all_finite(f1) || !all_finite(f2))
      throw NumericalError("quadrature: non-finite integrand value");
    const T s = f1 + f2;
    kronrod += s * kWgk[j];
    if (j % 2 == 1) gauss += s * kWg[j / 2];
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class T>
struct SumFor {
  using type = CompensatedSum;
};
template <>
struct SumFor<std::complex<double>> {
  using type = CompensatedComplexSum;
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature starting from the given
/// breakpoints. The worst panel is bisected until the summed embedded-rule
/// error estimate drops to `tol` or the panel cap is hit. Panel values are
/// summed in ascending order of their left endpoint.
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& breakpoints, double tol,
                      const QuadratureOptions& opts = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  if (!(tol > 0.0)) throw DomainError("quadrature: tol must be positive");
  if (breakpoints.size() < 2) throw DomainError("quadrature: need at least two breakpoints");

  std::vector<detail::Panel<T>> panels;
  panels.reserve(std::max<std::size_t>(64, breakpoints.size()));
  auto worse = [&](std::size_t i, std::size_t j) { return panels[i].error < panels[j].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);

  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
      throw DomainError("quadrature: breakpoints must be finite and increasing");
    panels.push_back(detail::gauss_kronrod_15<T>(f, a, b));
    total_error += panels.back().error;
    heap.push(panels.size() - 1);
  }

  bool stuck = false;
  while (total_error > tol && panels.size() < opts.max_panels) {
    const std::size_t worst = heap.top();
    const auto p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    const double scale = std::max(std::abs(p.a), std::abs(p.b));
    if (!(mid > p.a && mid < p.b) ||
        (p.b - p.a) < 64.0 * std::numeric_limits<double>::epsilon() * scale) {
      stuck = true;  // cannot refine below roundoff
      break;
    }
    heap.pop();
    auto left = detail::gauss_kronrod_15<T>(f, p.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, p.b);
    total_error += left.error + right.error - p.error;
    panels[worst] = left;
    heap.push(worst);
    panels.push_back(right);
    heap.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  typename detail::SumFor<T>::type value;
  CompensatedSum err;
  for (const auto& p : panels) {
    value.add(p.value);
    err.add(p.error);
  }
  QuadratureResult<T> out;
  out.value = value.value();
  out.error_estimate = err.value();
  out.subdivisions = panels.size();
  out.converged = !stuck && out.error_estimate <= tol;
  return out;
}

/// Integral of f over [a, b] to absolute tolerance `tol`.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double tol,
                        const QuadratureOptions& opts = {}) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_adaptive: need finite a < b");
  const std::size_t n = std::max<std::size_t>(1, opts.initial_panels);
  std::vector<double> breaks(n + 1);
  for (std::size_t i = 0; i <= n; ++i) breaks[i] = a + (b - a) * static_cast<double>(i) / n;
  breaks.back() = b;
  return integrate_panels(std::forward<F>(f), breaks, tol, opts);
}

/// Integral of f over the real line. The core [-T0, T0] is integrated
/// adaptively; the two tails are bounded analytically by
/// 2 C T0^(1-p) / (p-1) and that bound is added to the error estimate.
/// Unit-width starting panels cover [-valid_from, valid_from] where the
/// integrand may have structure; beyond it panels grow geometrically.
template <class F>
auto integrate_real_line(F&& f, const TailBound& tail, double tol,
                         const QuadratureOptions& opts = {}) {
  if (!(tol > 0.0)) throw DomainError("integrate_real_line: tol must be positive");
  if (!(tail.exponent > 1.0) || !(tail.constant >= 0.0))
    throw DomainError("integrate_real_line: decay exponent must exceed 1");
  const double p = tail.exponent;
  constexpr double kMaxHalfWidth = 1e9;

  // Smallest T0 with tail <= tol/2.
  double t0 = std::pow(4.0 * tail.constant / ((p - 1.0) * tol), 1.0 / (p - 1.0));
  t0 = std::max({t0, tail.valid_from, 1.0});
  t0 = std::min(t0, kMaxHalfWidth);
  const double tail_bound = 2.0 * tail.constant * std::pow(t0, 1.0 - p) / (p - 1.0);

  const double inner = std::min(std::max(tail.valid_from, 1.0), t0);
  const auto n_inner = static_cast<std::size_t>(std::clamp(std::ceil(2.0 * inner), 2.0, 8192.0));
  std::vector<double> right;  // breakpoints on [0, t0]
  for (std::size_t i = 0; i <= n_inner / 2; ++i) right.push_back(inner * 2.0 * i / n_inner);
  right.back() = inner;
  for (double edge = inner * 2.0; right.back() < t0; edge *= 2.0)
    right.push_back(std::min(edge, t0));
  std::vector<double> breaks;
  breaks.reserve(2 * right.size());
  for (auto it = right.rbegin(); it != right.rend(); ++it)
    if (*it > 0.0) breaks.push_back(-*it);
  breaks.insert(breaks.end(), right.begin(), right.end());

  const double core_tol = std::max(tol - tail_bound, 0.5 * tol);
  auto core = integrate_panels(std::forward<F>(f), breaks, core_tol, opts);
  core.error_estimate += tail_bound;
  core.converged = core.converged && core.error_estimate <= tol;
  return core;
}

}  // namespace paircorr
