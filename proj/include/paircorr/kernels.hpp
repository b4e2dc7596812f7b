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
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/quadrature.hpp"
#include "paircorr/zero_table.hpp"

namespace paircorr {

inline double fejer_j(double alpha) { return std::max(0.0, 1.0 - std::abs(alpha)); }

/// Montgomery-Taylor weight, built from the Fejer weight.
inline double montgomery_taylor_j(double alpha) {
  const double a = std::abs(alpha);
  if (a > 1.0) return 0.0;
  const double r2 = std::numbers::sqrt2;
  const double jf = fejer_j(a);
  return (std::sin(r2 * jf) / (2.0 * r2) + 0.5 * jf * std::cos(r2 * a)) / (1.0 - std::cos(r2));
}

/// Fourier transforms of the two built-in weights. Reference formulas only.
inline double fejer_jhat(double w) {
  if (w == 0.0) return 1.0;
  const double s = std::sin(std::numbers::pi * w) / (std::numbers::pi * w);
  return s * s;
}

inline double montgomery_taylor_jhat(double w) {
  const double r2 = std::numbers::sqrt2;
  auto sinc_half = [](double u) { return u == 0.0 ? 0.5 : std::sin(0.5 * u) / u; };
  const double s = sinc_half(r2 - 2.0 * std::numbers::pi * w) +
                   sinc_half(r2 + 2.0 * std::numbers::pi * w);
  return s * s / (1.0 - std::cos(r2));
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

/// An even, non-negative weight j supported on [-1, 1]. `profile` is only
/// ever called with arguments in [0, 1].
class Kernel {
 public:
  Kernel(std::string name, std::function<double(double)> profile, std::string notes = {})
      : name_(std::move(name)), profile_(std::move(profile)), notes_(std::move(notes)) {
    j_at_0_ = profile_(0.0);
  }

  const std::string& name() const noexcept { return name_; }
  const std::string& notes() const noexcept { return notes_; }
  double j_at_0() const noexcept { return j_at_0_; }

  double j(double alpha) const {
    const double a = std::abs(alpha);
    return a > 1.0 ? 0.0 : profile_(a);
  }

  /// r(alpha) = j(alpha) sech(alpha), the integrand weight of K.
  double r(double alpha) const { return j(alpha) * sech(alpha); }

 private:
  std::string name_;
  std::function<double(double)> profile_;
  std::string notes_;
  double j_at_0_ = 0.0;
};

inline Kernel fejer_kernel() {
  return Kernel("fejer", fejer_j, "Fejer weight max(0, 1-|alpha|)");
}

inline Kernel montgomery_taylor_kernel() {
  return Kernel("montgomery-taylor", montgomery_taylor_j,
                "Montgomery-Taylor weight built on the Fejer weight");
}

/// Piecewise-linear kernel through (alpha_i, j_i), alpha_0 = 0 < ... < alpha_n = 1.
inline Kernel tabulated_kernel(std::string name, std::vector<double> alphas,
                               std::vector<double> values) {
  if (alphas.size() != values.size() || alphas.size() < 2)
    throw DomainError("tabulated kernel: need at least two (alpha, j) nodes");
  if (alphas.front() != 0.0 || alphas.back() != 1.0)
    throw DomainError("tabulated kernel: nodes must span [0, 1]");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i && !(alphas[i] > alphas[i - 1]))
      throw DomainError("tabulated kernel: nodes must be increasing");
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw DomainError("tabulated kernel: values must be finite and non-negative");
  }
  auto xs = std::make_shared<const std::vector<double>>(std::move(alphas));
  auto ys = std::make_shared<const std::vector<double>>(std::move(values));
  return Kernel(std::move(name), [xs, ys](double a) {
    const auto& x = *xs;
    const auto it = std::upper_bound(x.begin(), x.end(), a);
    if (it == x.begin()) return (*ys).front();
    if (it == x.end()) return (*ys).back();
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (a - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * (*ys)[i - 1] + w * (*ys)[i];
  }, "tabulated");
}

/// Reads "alpha,j" lines (blank lines and '#' comments skipped).
inline Kernel load_kernel_file(const std::string& path) {
  const std::string text = read_file_bytes(path);
  std::vector<double> xs, ys;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = detail::trim(std::string_view(text).substr(pos, nl - pos));
    pos = nl == std::string::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto c = line.find(',');
    double a = 0, v = 0;
    if (c == std::string_view::npos || !detail::parse_double(line.substr(0, c), a) ||
        !detail::parse_double(line.substr(c + 1), v))
      throw ParseError(line_no, "malformed alpha,j record");
    xs.push_back(a);
    ys.push_back(v);
  }
  return tabulated_kernel(path, std::move(xs), std::move(ys));
}

/// Fourier transform of K: j(2 pi t) sech(2 pi t).
inline double khat(const Kernel& kernel, double t) {
  const double a = 2.0 * std::numbers::pi * t;
  return kernel.j(a) * sech(a);
}

struct KernelValue {
  std::complex<double> z;
  std::complex<double> value;
  double quadrature_error = 0.0;
  bool converged = true;
};

/// K(z) = (1/pi) * integral_0^1 j(a) sech(a) cos(z a) da.
inline KernelValue k_of_z(const Kernel& kernel, std::complex<double> z, double tol) {
  if (!(tol > 0.0)) throw DomainError("k_of_z: tol must be positive");
  QuadratureOptions opts;
  opts.initial_panels = static_cast<std::size_t>(
      std::clamp(std::ceil(std::abs(z.real()) / std::numbers::pi), 1.0, 4096.0));
  const double x = z.real(), y = z.imag();
  KernelValue out{z, {}, 0.0, true};
  if (y == 0.0) {
    auto res = integrate_adaptive(
        [&](double a) { return kernel.r(a) * std::cos(x * a); }, 0.0, 1.0,
        tol * std::numbers::pi, opts);
    out.value = res.value / std::numbers::pi;
    out.quadrature_error = res.error_estimate / std::numbers::pi;
    out.converged = res.converged;
  } else {
    auto res = integrate_adaptive(
        [&](double a) {
          const double w = kernel.r(a);
          return std::complex<double>(w * std::cos(x * a) * std::cosh(y * a),
                                      -w * std::sin(x * a) * std::sinh(y * a));
        },
        0.0, 1.0, tol * std::numbers::pi, opts);
    out.value = res.value / std::numbers::pi;
    out.quadrature_error = res.error_estimate / std::numbers::pi;
    out.converged = res.converged;
  }
  return out;
}

/// Constants of the decay bound
///   |K(z)| <= e^{|Im z|} / pi * (endpoint / |z| + curvature / |z|^2),
/// obtained by integrating by parts twice: endpoint = |r(1)|,
/// curvature = |r'(0+)| + |r'(1-)| + total variation of r' on (0, 1).
/// Derivatives are estimated on a fine grid; a 1% margin is added.
struct KernelDecay {
  double endpoint = 0.0;
  double curvature = 0.0;

  double bound(std::complex<double> z) const {
    const double m = std::abs(z);
    return std::exp(std::abs(z.imag())) / std::numbers::pi *
           (endpoint / m + curvature / (m * m));
  }
};

inline KernelDecay kernel_decay(const Kernel& kernel, std::size_t grid = 20000) {
  const double h = 1.0 / static_cast<double>(grid);
  std::vector<double> slope(grid);
  for (std::size_t i = 0; i < grid; ++i)
    slope[i] = (kernel.r((i + 1) * h) - kernel.r(i * h)) / h;
  double tv = 0.0;
  for (std::size_t i = 1; i < grid; ++i) tv += std::abs(slope[i] - slope[i - 1]);
  KernelDecay d;
  d.endpoint = std::abs(kernel.r(1.0)) * 1.01;
  if (d.endpoint < 1e-14) d.endpoint = 0.0;
  d.curvature = (std::abs(slope.front()) + std::abs(slope.back()) + tv) * 1.01;
  return d;
}

struct TsangGrid {
  double x_max = 50.0;
  double x_step = 0.1;
  std::vector<double> y_values = {0.0, 0.45, -0.45, 0.9, -0.9};
};

struct TsangViolation {
  char property;  // 'a', 'b' or 'c'
  std::complex<double> z;
  std::complex<double> value;
  double margin;  // negative when violated
};

struct TsangReport {
  std::string kernel;
  bool property_a = true;
  bool property_b = true;
  bool property_c = true;
  bool smooth = true;            // finite-difference probe; informational only
  double bound_C = 0.0;
  double max_decay_ratio = 0.0;  // max |K(z)| |z|^2 e^{-|Im z|} over |z| >= 1
  double min_real_margin = 0.0;  // min (Re K - quadrature error) over the grid
  std::size_t samples = 0;
  std::vector<TsangViolation> violations;

  bool passed() const { return property_a && property_b && property_c; }
};

/// Second-difference probe of j on (0, 1). Flags jumps in j'' that a
/// twice-differentiable weight would not have.
inline bool probe_smoothness(const Kernel& kernel, std::size_t points = 1000,
                             double threshold = 1e3) {
  const double h = 1.0 / (4.0 * static_cast<double>(points));
  for (std::size_t i = 1; i < points; ++i) {
    const double a = static_cast<double>(i) / points;
    const double d2 = (kernel.j(a + h) - 2.0 * kernel.j(a) + kernel.j(a - h)) / (h * h);
    if (!std::isfinite(d2) || std::abs(d2) > threshold) return false;
  }
  return true;
}

/// Samples positivity on the real line, the |z|^-2 e^{|Im z|} envelope, and
/// positivity of Re K in the strip |Im z| <= max |y| on the grid.
inline TsangReport verify_tsang_properties(const Kernel& kernel, const TsangGrid& grid,
                                           double bound_C, double tol = 1e-12) {
  double y_max = 0.0;
  for (double y : grid.y_values) y_max = std::max(y_max, std::abs(y));
  if (!(y_max < 1.0)) throw DomainError("tsang grid: |y| must stay below 1");
  if (!(grid.x_step > 0.0)) throw DomainError("tsang grid: x_step must be positive");

  TsangReport rep;
  rep.kernel = kernel.name();
  rep.bound_C = bound_C;
  rep.min_real_margin = std::numeric_limits<double>::infinity();
  rep.smooth = probe_smoothness(kernel);
  const auto n = static_cast<long>(std::llround(grid.x_max / grid.x_step));
  for (double y : grid.y_values) {
    for (long i = -n; i <= n; ++i) {
      const std::complex<double> z(static_cast<double>(i) * grid.x_step, y);
      const auto kv = k_of_z(kernel, z, tol);
      ++rep.samples;
      const double margin = kv.value.real() - kv.quadrature_error;
      rep.min_real_margin = std::min(rep.min_real_margin, margin);
      if (y == 0.0 && !(margin > 0.0)) {
        rep.property_a = false;
        rep.violations.push_back({'a', z, kv.value, margin});
      }
      if (!(margin > 0.0)) {
        rep.property_c = false;
        rep.violations.push_back({'c', z, kv.value, margin});
      }
      const double mod = std::abs(z);
      if (mod >= 1.0) {
        const double ratio = std::abs(kv.value) * mod * mod * std::exp(-std::abs(y));
        rep.max_decay_ratio = std::max(rep.max_decay_ratio, ratio);
        if (ratio > bound_C) {
          rep.property_b = false;
          rep.violations.push_back({'b', z, kv.value, bound_C - ratio});
        }
      }
    }
  }
  return rep;
}

/// Tabulated K(x) for real x in [0, x_max] with linear interpolation.
/// `error_bound()` covers interpolation (h^2/8 max|K''|) plus the largest
/// quadrature error among the nodes.
class KernelGridCache {
 public:
  KernelGridCache(const Kernel& kernel, double x_max, double step, double tol)
      : step_(step), x_max_(x_max) {
    if (!(step > 0.0) || !(x_max > 0.0)) throw DomainError("kernel cache: bad grid");
    const auto n = static_cast<std::size_t>(std::ceil(x_max / step)) + 1;
    values_.resize(n + 1);
    double qerr = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const auto kv = k_of_z(kernel, {static_cast<double>(i) * step, 0.0}, tol);
      values_[i] = kv.value.real();
      qerr = std::max(qerr, kv.quadrature_error);
    }
    const auto m2 = integrate_adaptive([&](double a) { return kernel.r(a) * a * a; }, 0.0, 1.0,
                                       1e-12);
    const double kpp_max = (m2.value + m2.error_estimate) / std::numbers::pi;
    error_bound_ = step * step / 8.0 * kpp_max + qerr;
  }

  bool covers(double x) const { return std::abs(x) <= x_max_; }

  double operator()(double x) const {
    const double ax = std::abs(x) / step_;
    const auto i = static_cast<std::size_t>(ax);
    const double w = ax - static_cast<double>(i);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
  }

  double error_bound() const noexcept { return error_bound_; }

 private:
  double step_;
  double x_max_;
  double error_bound_ = 0.0;
  std::vector<double> values_;
};

}  // namespace paircorr
