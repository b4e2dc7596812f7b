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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "paircorr/errors.hpp"
#include "paircorr/kernels.hpp"
#include "paircorr/quadrature.hpp"
#include "paircorr/summation.hpp"
#include "paircorr/zero_table.hpp"

namespace paircorr {

/// Constants of the simple-zero proportion bound for one kernel.
///   khat0        = j(0)
///   alpha_moment = 2 int_0^1 alpha j(alpha) sech(alpha) d alpha
///   piK0         = int_0^1 j(u) sech(u) du  (= pi K(0))
struct SimpleZeroBound {
  std::string kernel_name;
  double khat0 = 0.0;
  double alpha_moment = 0.0;
  double piK0 = 0.0;
  double quadrature_error = 0.0;

  /// Upper bound on the mean multiplicity, (khat0 + alpha_moment) / (2 piK0).
  double mean_multiplicity() const { return (khat0 + alpha_moment) / (2.0 * piK0); }
  /// Lower bound on the proportion of simple zeros.
  double bound() const { return 2.0 - mean_multiplicity(); }
};

inline SimpleZeroBound simple_zero_bound(const Kernel& kernel, double tol = 1e-13) {
  if (!(tol > 0.0)) throw DomainError("simple_zero_bound: tol must be positive");
  const auto moment = integrate_adaptive(
      [&](double a) { return 2.0 * a * kernel.r(a); }, 0.0, 1.0, 0.5 * tol);
  const auto mass = integrate_adaptive([&](double a) { return kernel.r(a); }, 0.0, 1.0, 0.5 * tol);
  if (!moment.converged || !mass.converged)
    throw NumericalError("simple_zero_bound: quadrature did not converge");
  if (!(mass.value > 0.0))
    throw DomainError("simple_zero_bound: K(0) vanishes for kernel " + kernel.name());
  SimpleZeroBound b;
  b.kernel_name = kernel.name();
  b.khat0 = kernel.j_at_0();
  b.alpha_moment = moment.value;
  b.piK0 = mass.value;
  b.quadrature_error = moment.error_estimate + mass.error_estimate;
  return b;
}

struct KernelSumOptions {
  // Pairs with |beta - beta'| below this go into close_sum; default 1 / log T.
  std::optional<double> close_threshold;
  // Tabulate K on the real axis instead of integrating per pair.
  bool use_grid_cache = false;
  double cache_step = 0.005;
  ParallelOptions parallel;
};

struct KernelPairSum {
  double T = 0.0;
  double close_threshold = 0.0;
  double close_sum = 0.0;         // 2 pi sum Re K(-i(rho - rho') log T), close pairs in band
  double s_of_t = 0.0;            // 2 pi Re sum K(...) w(rho - rho'), far-in-beta pairs
  double rhs_main = 0.0;          // (khat0 + alpha_moment) (T / 2 pi) log T
  double truncation_bound = 0.0;  // omitted close pairs with |gamma - gamma'| > band
  double numerical_error = 0.0;   // accumulated quadrature / interpolation error
  double min_close_term = 0.0;    // smallest 2 pi m m' Re K among close pairs
  std::uint64_t non_positive_terms = 0;
  std::uint64_t close_pairs = 0;
  std::uint64_t far_pairs = 0;
  bool converged = true;

  double ratio() const { return close_sum / rhs_main; }
};

namespace detail {

struct KernelSumAcc {
  CompensatedSum close;
  CompensatedSum err;
  double min_term = std::numeric_limits<double>::infinity();
  std::uint64_t non_positive = 0;
  std::uint64_t pairs = 0;
  bool converged = true;

  void add(const KernelSumAcc& o) {
    close.add(o.close);
    err.add(o.err);
    min_term = std::min(min_term, o.min_term);
    non_positive += o.non_positive;
    pairs += o.pairs;
    converged = converged && o.converged;
  }
};

}  // namespace detail

/// Kernel-weighted pair sums split by |beta - beta'| at the close threshold.
/// Close pairs are restricted to |gamma - gamma'| <= band; the omitted mass
/// is bounded through the decay of K.
inline KernelPairSum kernel_pair_sum(const ZeroTable& table, const Kernel& kernel, double T,
                                     double tol, double band, const KernelSumOptions& opts = {}) {
  if (!(T >= 3.0)) throw DomainError("kernel_pair_sum: T must be >= 3");
  if (T > table.coverage()) throw CoverageError("kernel_pair_sum: T exceeds table coverage");
  if (!(band > 0.0)) throw DomainError("kernel_pair_sum: band must be positive");
  if (!(tol > 0.0)) throw DomainError("kernel_pair_sum: tol must be positive");

  const double L = std::log(T);
  const double two_pi = 2.0 * std::numbers::pi;
  const auto consts = simple_zero_bound(kernel);

  KernelPairSum out;
  out.T = T;
  out.close_threshold = opts.close_threshold.value_or(1.0 / L);
  out.rhs_main = (consts.khat0 + consts.alpha_moment) * T / two_pi * L;

  const std::size_t n = table.index_up_to(T);
  const auto zeros = table.zeros();
  const auto gammas = table.gammas();
  const double cut = out.close_threshold;

  std::optional<KernelGridCache> cache;
  if (opts.use_grid_cache && n > 0) cache.emplace(kernel, band * L + 1.0, opts.cache_step, tol);

  const auto acc = chunked_reduce<detail::KernelSumAcc>(
      n, opts.parallel, [&](std::size_t lo, std::size_t hi, detail::KernelSumAcc& a) {
        for (std::size_t k = lo; k < hi; ++k) {
          const auto& zk = zeros[k];
          const auto first = static_cast<std::size_t>(
              std::lower_bound(gammas.begin(), gammas.begin() + n, zk.gamma - band) -
              gammas.begin());
          const auto last = static_cast<std::size_t>(
              std::upper_bound(gammas.begin(), gammas.begin() + n, zk.gamma + band) -
              gammas.begin());
          for (std::size_t l = first; l < last; ++l) {
            const auto& zl = zeros[l];
            const double dbeta = zk.delta - zl.delta;
            if (!(std::abs(dbeta) < cut)) continue;
            const std::complex<double> z((zk.gamma - zl.gamma) * L, -dbeta * L);
            const double weight = two_pi * zk.multiplicity * zl.multiplicity;
            double re_k, err;
            if (cache && z.imag() == 0.0 && cache->covers(z.real())) {
              re_k = (*cache)(z.real());
              err = cache->error_bound();
            } else {
              const auto kv = k_of_z(kernel, z, tol);
              re_k = kv.value.real();
              err = kv.quadrature_error;
              a.converged = a.converged && kv.converged;
            }
            const double term = weight * re_k;
            a.close.add(term);
            a.err.add(weight * err);
            a.min_term = std::min(a.min_term, term);
            if (!(re_k > 0.0)) ++a.non_positive;
            ++a.pairs;
          }
        }
      });
  out.close_sum = acc.close.value();
  out.numerical_error = acc.err.value();
  out.min_close_term = acc.pairs ? acc.min_term : 0.0;
  out.non_positive_terms = acc.non_positive;
  out.close_pairs = acc.pairs;
  out.converged = acc.converged;

  // Pairs with |beta - beta'| >= cut involve at least one off-line zero.
  CompensatedSum s;
  const auto off = table.off_line_indices();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& zk = zeros[k];
    auto visit = [&](std::size_t l) {
      const auto& zl = zeros[l];
      const double dbeta = zk.delta - zl.delta;
      if (!(std::abs(dbeta) >= cut)) return;
      const std::complex<double> diff(dbeta, zk.gamma - zl.gamma);  // rho - rho'
      const std::complex<double> z = std::complex<double>(0.0, -1.0) * diff * L;
      const auto kv = k_of_z(kernel, z, tol);
      const std::complex<double> w = 4.0 / (4.0 - diff * diff);
      const double weight = two_pi * zk.multiplicity * zl.multiplicity;
      s.add(weight * (kv.value * w).real());
      out.numerical_error += weight * kv.quadrature_error * std::abs(w);
      out.converged = out.converged && kv.converged;
      ++out.far_pairs;
    };
    if (!zk.on_line()) {
      for (std::size_t l = 0; l < n; ++l) visit(l);
    } else {
      for (std::size_t l : off) {
        if (l >= n) break;
        visit(l);
      }
    }
  }
  out.s_of_t = s.value();

  if (n > 0) {
    // |Im z| < 1 for close pairs and |z| >= band * log T for omitted ones.
    const auto decay = kernel_decay(kernel);
    const double D = static_cast<double>(max_unit_window_count(table, T));
    const double M = static_cast<double>(table.count_up_to(T));
    const double inv_d2 = 2.0 * D * (1.0 / band + 1.0 / (band * band));
    const double inv_d = 2.0 * D * (1.0 / band + std::log1p(T / band));
    out.truncation_bound = two_pi * M * std::numbers::e / std::numbers::pi *
                           (decay.endpoint * inv_d / L + decay.curvature * inv_d2 / (L * L));
  }
  return out;
}

/// close_sum / (2 pi K(0)): an upper bound for the sum of multiplicities
/// once every pair with rho = rho' sits in the close set.
struct MultiplicityBound {
  double value = 0.0;
  std::int64_t zero_count = 0;  // N(T) with multiplicity
  KernelPairSum sums;
};

inline MultiplicityBound multiplicity_upper_bound(const ZeroTable& table, const Kernel& kernel,
                                                  double T, double tol, double band,
                                                  const KernelSumOptions& opts = {}) {
  const auto consts = simple_zero_bound(kernel);
  MultiplicityBound mb;
  mb.sums = kernel_pair_sum(table, kernel, T, tol, band, opts);
  mb.value = mb.sums.close_sum / (2.0 * consts.piK0);
  mb.zero_count = table.count_up_to(T);
  return mb;
}

/// Default band in gamma units: 60 pi / log T.
inline double default_kernel_band(double T) { return 60.0 * std::numbers::pi / std::log(T); }

}  // namespace paircorr
