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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "paircorr/pair_correlation.hpp"
#include "test_support.hpp"

namespace paircorr {
namespace {

constexpr double kG1 = 14.134725, kG2 = 21.022040;
constexpr double kPi = std::numbers::pi;

// Synthetic tables declare how far up they are complete.
ZeroTable two_zero_table() { return ZeroTable({{0.0, kG1}, {0.0, kG2}}, {}, 25.0); }

// Brute-force oracle straight from the definition, no factorization.
cplx brute_force_f(const std::vector<ZetaZero>& zs, double x, double T) {
  cplx s = 0.0;
  for (const auto& a : zs) {
    if (a.gamma > T) continue;
    for (const auto& b : zs) {
      if (b.gamma > T) continue;
      const cplx u(a.delta + b.delta, a.gamma - b.gamma);
      s += double(a.multiplicity * b.multiplicity) * std::pow(cplx(x, 0.0), u) * 4.0 /
           (4.0 - u * u);
    }
  }
  return s;
}

std::vector<ZetaZero> random_zeros(std::mt19937_64& rng, int n, double t_hi, bool off_line) {
  std::uniform_real_distribution<double> g(10.0, t_hi), d(-0.1, 0.1), coin(0.0, 1.0);
  std::vector<ZetaZero> zs;
  for (int i = 0; i < n; ++i) zs.push_back({off_line && coin(rng) < 0.5 ? d(rng) : 0.0, g(rng)});
  return zs;
}

TEST(WeightW, Values) {
  EXPECT_EQ(weight_w(0.0), cplx(1.0));
  EXPECT_NEAR(std::abs(weight_w(cplx(0.0, 2.0)) - 0.5), 0.0, 1e-16);
  const cplx u(0.3, 1.7);
  EXPECT_EQ(weight_w(u), weight_w(-u));
  EXPECT_THROW(weight_w(2.0), DomainError);
  EXPECT_THROW(weight_w(-2.0), DomainError);
}

TEST(FExact, SingleZero) {
  const ZeroTable t({{0.0, 14.134725}}, {}, 20.0);
  for (double x : {0.5, 1.0, 7.0}) {
    const auto r = f_exact(t, x, 20.0);
    EXPECT_NEAR(r.value.real(), 1.0, 1e-15);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
    EXPECT_EQ(r.truncation_bound, 0.0);
    EXPECT_EQ(r.pairs_evaluated, 1u);
  }
}

TEST(FExact, TwoZerosAtXOne) {
  const double g = kG2 - kG1;
  const auto r = f_exact(two_zero_table(), 1.0, 25.0);
  EXPECT_NEAR(r.value.real(), 2.0 + 8.0 / (4.0 + g * g), 1e-14);
  EXPECT_NEAR(r.value.real(), 2.15554, 1e-5);
  EXPECT_EQ(r.pairs_evaluated, 4u);
}

TEST(FExact, TwoZerosCosineForm) {
  const double g = kG2 - kG1;
  for (double x : {0.3, 2.0, 17.5, std::exp(kPi / g)}) {
    const auto r = f_exact(two_zero_table(), x, 25.0);
    EXPECT_NEAR(r.value.real(), 2.0 + 2.0 * std::cos(g * std::log(x)) * 4.0 / (4.0 + g * g), 1e-13);
  }
  EXPECT_NEAR(f_exact(two_zero_table(), std::exp(kPi / g), 25.0).value.real(), 1.84446, 1e-5);
}

TEST(FExact, MirroredOffLinePair) {
  const std::vector<ZetaZero> zs = {{0.01, 100.0}, {-0.01, 100.0}};
  const double w = 4.0 / (4.0 - 0.02 * 0.02);
  const double expected = std::pow(10.0, 0.02) * w + 2.0 + std::pow(10.0, -0.02) * w;
  const auto r = f_exact(ZeroTable(zs, {}, 101.0), 10.0, 101.0);
  EXPECT_NEAR(r.value.real(), expected, 1e-14);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-14);
}

TEST(FExact, MatchesBruteForceOnRandomTables) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto zs = random_zeros(rng, 30, 80.0, true);
    zs[3].multiplicity = 2;
    const ZeroTable t(zs, {}, 80.0);
    for (double x : {0.7, 1.0, 3.0, 40.0}) {
      const double T = 60.0;
      const auto oracle = brute_force_f(zs, x, T);
      EXPECT_NEAR(std::abs(f_exact(t, x, T).value - oracle), 0.0, 1e-11 * std::abs(oracle));
    }
  }
}

TEST(FExact, EvenInLogX) {
  // Evenness needs the functional-equation partner delta -> -delta of every
  // off-line zero.
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto zs = random_zeros(rng, 40, 100.0, true);
    for (std::size_t i = 0, n = zs.size(); i < n; ++i)
      if (zs[i].delta != 0.0) zs.push_back({-zs[i].delta, zs[i].gamma});
    const ZeroTable t(zs, {}, 100.0);
    for (double x : {1.5, 9.0, 123.0}) {
      const auto a = f_exact(t, x, 100.0).value, b = f_exact(t, 1.0 / x, 100.0).value;
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-11 * std::abs(a));
    }
  }
}

TEST(FExact, NonNegativeAndDiagonalBound) {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const ZeroTable t(random_zeros(rng, 50, 100.0, rep % 2 == 1), {}, 100.0);
    for (double x : {1.0, 2.5, 50.0, 1e4}) {
      const auto r = f_exact(t, x, 100.0);
      EXPECT_GE(r.value.real(), -1e-9 * static_cast<double>(r.pairs_evaluated));
    }
    if (t.all_on_line())
      EXPECT_GE(f_exact(t, 1.0, 100.0).value.real(), static_cast<double>(t.count_up_to(100.0)));
  }
}

TEST(FExact, OnLineImaginaryPartIsRoundoff) {
  const auto t = paircorr::testing::genuine_prefix(500);
  const auto r = f_exact(t, 37.0, t.t_max());
  EXPECT_LT(std::abs(r.value.imag()), 1e-10 * static_cast<double>(r.pairs_evaluated));
}

TEST(FExact, Errors) {
  const auto t = two_zero_table();
  EXPECT_THROW(f_exact(t, 1.0, 30.0), CoverageError);
  EXPECT_THROW(f_exact(ZeroTable({{0.0, kG1}}), 1.0, 20.0), CoverageError);
  EXPECT_THROW(f_exact(t, 0.0, 20.0), DomainError);
  EXPECT_EQ(f_exact(t, 2.0, 10.0).value, cplx(0.0));
  const ZeroTable wide({{0.0, kG1}}, {}, 1000.0);
  EXPECT_NO_THROW(f_exact(wide, 2.0, 500.0));
}

TEST(FBanded, DiagonalOnlyWhenBandBelowGap) {
  const double g = kG2 - kG1;
  const auto r = f_banded(two_zero_table(), 1.0, 25.0, 5.0);
  EXPECT_NEAR(r.value.real(), 2.0, 1e-15);
  EXPECT_EQ(r.pairs_evaluated, 2u);
  EXPECT_GE(r.truncation_bound, 8.0 / (4.0 + g * g));
}

TEST(FBanded, WideBandEqualsExact) {
  const auto t = paircorr::testing::genuine_prefix(200);
  const double T = t.t_max();
  const auto e = f_exact(t, 5.0, T);
  const auto b = f_banded(t, 5.0, T, 2 * T);
  EXPECT_EQ(b.pairs_evaluated, e.pairs_evaluated);
  EXPECT_NEAR(std::abs(b.value - e.value), 0.0, 1e-10);
  EXPECT_GT(b.truncation_bound, 0.0);
}

TEST(FBanded, WithinCertificateOnRandomConfigs) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> la(0.0, 6.0), lb(-1.0, 5.0);
  for (int rep = 0; rep < 30; ++rep) {
    auto zs = random_zeros(rng, 60, 200.0, true);
    zs[0].multiplicity = 3;
    const ZeroTable t(zs, {}, 200.0);
    const double x = std::exp(la(rng)), band = std::exp(lb(rng));
    const auto e = f_exact(t, x, 200.0), b = f_banded(t, x, 200.0, band);
    EXPECT_LE(std::abs(e.value - b.value), b.truncation_bound) << x << " " << band;
  }
}

TEST(FBanded, Errors) {
  EXPECT_THROW(f_banded(two_zero_table(), 1.0, 25.0, 0.0), DomainError);
  EXPECT_THROW(f_banded(two_zero_table(), 0.5, 25.0, 1.0), DomainError);
}

TEST(FBanded, ThreadCountDoesNotChangeBits) {
  const auto t = paircorr::testing::genuine_prefix(3000);
  const auto a = f_banded(t, 100.0, t.t_max(), 20.0, {.threads = 1, .chunk_size = 64});
  const auto b = f_banded(t, 100.0, t.t_max(), 20.0, {.threads = 4, .chunk_size = 64});
  EXPECT_EQ(a.value, b.value);
}

TEST(FAlphaCurve, TheoreticalValues) {
  EXPECT_NEAR(f_alpha_theoretical(1.0, 1e4), 1.0 + 1e-8 * std::log(1e4), 1e-15);
  EXPECT_NEAR(f_alpha_theoretical(0.5, 1e4), 0.500921, 1e-6);
  EXPECT_NEAR(f_alpha_theoretical(0.0, 1e4), std::log(1e4), 1e-14);
}

TEST(FAlphaCurve, ShapesAndNormalization) {
  const auto t = paircorr::testing::genuine_prefix(1000);
  const double T = t.t_max();
  const std::vector<double> alphas = {0.0, 0.5, 1.0};
  const auto c = f_alpha_curve(t, T, alphas, PairMode::exact());
  ASSERT_EQ(c.empirical.size(), 3u);
  ASSERT_EQ(c.theoretical.size(), 3u);
  EXPECT_NEAR(c.normalization, T / (2 * kPi) * std::log(T), 1e-9);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_GE(c.empirical[i], -1e-9);
    EXPECT_TRUE(std::isfinite(c.empirical[i]));
    const auto direct = f_exact(t, std::exp(alphas[i] * std::log(T)), T);
    EXPECT_NEAR(c.empirical[i], direct.value.real() / c.normalization, 1e-9);
  }
  const std::vector<double> bad = {1.2};
  EXPECT_THROW(f_alpha_curve(t, T, bad, PairMode::exact()), DomainError);
  EXPECT_THROW(f_alpha_curve(t, T + 1, alphas, PairMode::exact()), CoverageError);
}

TEST(IntegralRepresentation, SingleZero) {
  const auto r = verify_integral_representation(ZeroTable({{0.0, 14.134725}}, {}, 20.0), 2.0, 20.0, 1e-6);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.integral, 1.0, 1e-6);
}

TEST(IntegralRepresentation, TwoZeros) {
  const auto r = verify_integral_representation(two_zero_table(), 1.0, 25.0, 1e-6);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.integral, 2.15554, 1e-5);
}

TEST(IntegralRepresentation, MirroredOffLinePair) {
  const auto r = verify_integral_representation(ZeroTable({{0.05, 30.0}, {-0.05, 30.0}}, {}, 31.0), 3.0, 31.0, 1e-6);
  EXPECT_TRUE(r.passed) << r.difference << " " << r.certificate;
}

TEST(IntegralRepresentation, SizeGuard) {
  std::vector<ZetaZero> many;
  for (int i = 0; i < 201; ++i) many.push_back({0.0, 10.0 + i});
  EXPECT_THROW(verify_integral_representation(ZeroTable(many, {}, 300.0), 1.0, 300.0, 1e-6), DomainError);
}

TEST(ResidueIntegral, Examples) {
  for (cplx a : {cplx(0.0), cplx(1.0), cplx(0.0, 0.5), cplx(-3.0, 0.9), cplx(12.0, -0.7)}) {
    const auto r = verify_residue_integral(a, 1e-9);
    EXPECT_TRUE(r.passed) << a << " " << std::abs(r.quadrature - r.closed_form);
  }
  EXPECT_NEAR(verify_residue_integral(0.0, 1e-10).quadrature.real(), kPi / 2, 1e-10);
  EXPECT_NEAR(verify_residue_integral(1.0, 1e-10).quadrature.real(), 2 * kPi / 5, 1e-10);
  EXPECT_NEAR(std::abs(verify_residue_integral(cplx(0, 0.5), 1e-10).quadrature - 2 * kPi / 3.75),
              0.0, 1e-10);
  EXPECT_THROW(verify_residue_integral(cplx(0.0, 1.0), 1e-8), DomainError);
}

TEST(ResidueIntegral, TrapezoidOracle) {
  // Independent check of the closed form at a = 1 with a plain trapezoid rule.
  const double h = 1e-3, L = 2000.0;
  double s = 0.0;
  for (long i = -static_cast<long>(L / h); i <= static_cast<long>(L / h); ++i) {
    const double t = static_cast<double>(i) * h;
    s += 1.0 / ((1 + t * t) * (1 + (t + 1) * (t + 1)));
  }
  EXPECT_NEAR(s * h, 2 * kPi / 5, 1e-8);
}

}  // namespace
}  // namespace paircorr
