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
#include <vector>

#include "paircorr/explicit_formula.hpp"
#include "test_support.hpp"

namespace paircorr {
namespace {

// Lambda(n) by trial division, independent of the sieve.
double lambda_oracle(std::size_t n) {
  if (n < 2) return 0.0;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

const VonMangoldtTable& small_sieve() {
  static const auto vm = sieve_von_mangoldt(200000);
  return vm;
}

TEST(Sieve, SpotValues) {
  const auto& vm = small_sieve();
  EXPECT_EQ(vm(6), 0.0);
  EXPECT_NEAR(vm(8), std::log(2.0), 1e-15);
  EXPECT_NEAR(vm(97), 4.574711, 1e-6);
  EXPECT_EQ(vm(1), 0.0);
  EXPECT_EQ(vm.limit(), 200000u);
}

TEST(Sieve, MatchesTrialDivision) {
  const auto& vm = small_sieve();
  for (std::size_t n = 1; n <= 20000; ++n) ASSERT_EQ(vm(n), lambda_oracle(n)) << n;
  for (std::size_t n : {65536u, 59049u, 199999u, 199967u, 177147u}) EXPECT_EQ(vm(n), lambda_oracle(n));
}

TEST(Sieve, ChebyshevSanity) {
  const auto& vm = small_sieve();
  for (std::size_t N : {1000u, 10000u, 100000u}) {
    EXPECT_LE(std::abs(vm.chebyshev_psi(N) - static_cast<double>(N)), 0.15 * N) << N;
  }
  EXPECT_THROW(sieve_von_mangoldt(1), DomainError);
}

TEST(LhsZeroSum, EmptyAndResonant) {
  const ZeroTable empty({}, {}, 100.0);
  EXPECT_EQ(lhs_zero_sum(empty, 5.0, 3.0, 50.0).value, std::complex<double>(0.0));
  const double g0 = 14.134725;
  const ZeroTable one({{0.0, g0}});
  const auto r = lhs_zero_sum(one, 1.0, g0, g0);
  // Resonant term 2 plus the conjugate zero at -g0.
  const double conj = 2.0 / (1.0 + 4.0 * g0 * g0);
  EXPECT_NEAR(r.value.real(), 2.0 + conj, 1e-15);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
}

TEST(LhsZeroSum, ConjugateSymmetry) {
  const auto t = paircorr::testing::genuine_prefix(1000);
  for (double x : {1.0, 10.0, 100.0}) {
    for (double tt : {3.3, 50.0, 200.0}) {
      const auto a = lhs_zero_sum(t, x, tt, t.t_max()).value;
      const auto b = lhs_zero_sum(t, x, -tt, t.t_max()).value;
      EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * std::abs(a));
    }
  }
}

TEST(LhsZeroSum, TwoCutoffsWithinTailBound) {
  const auto& full = paircorr::testing::genuine_table();
  const auto t = paircorr::testing::genuine_prefix(1000);
  const auto a = lhs_zero_sum(t, 100.0, 50.0, t.t_max());
  const auto b = lhs_zero_sum(full, 100.0, 50.0, 2 * t.t_max());
  EXPECT_LE(std::abs(a.value - b.value), a.tail_bound);
  EXPECT_GT(a.tail_bound, 0.0);
  EXPECT_THROW(lhs_zero_sum(t, 100.0, 50.0, t.t_max() + 1), CoverageError);
  EXPECT_THROW(lhs_zero_sum(t, 0.5, 50.0, 100.0), DomainError);
}

TEST(RhsMain, ConjugateSymmetryAndRealAtZero) {
  const auto& vm = small_sieve();
  const auto r0 = rhs_main(vm, 100.0, 0.0, 100000);
  EXPECT_EQ(r0.value.imag(), 0.0);
  const auto a = rhs_main(vm, 100.0, 50.0, 100000).value;
  const auto b = rhs_main(vm, 100.0, -50.0, 100000).value;
  EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12);
}

TEST(RhsMain, TwoCutoffsWithinTailBound) {
  const auto& vm = small_sieve();
  const auto a = rhs_main(vm, 100.0, 50.0, 10000);
  const auto b = rhs_main(vm, 100.0, 50.0, 20000);
  EXPECT_LE(std::abs(a.value - b.value), a.tail_bound);
  EXPECT_THROW(rhs_main(vm, 100.0, 50.0, 50), DomainError);
  EXPECT_THROW(rhs_main(vm, 100.0, 50.0, 300000), CoverageError);
}

TEST(RhsMain, SmallestX) {
  const auto& vm = small_sieve();
  const auto r = rhs_main(vm, 1.0, 0.0, 1000);
  std::complex<double> s = std::log(2.0);
  for (std::size_t n = 2; n <= 1000; ++n) s -= lambda_oracle(n) / (n * std::sqrt(double(n)));
  EXPECT_NEAR(std::abs(r.value - s), 0.0, 1e-12);
}

TEST(ResidualReport, NearZeroPointsAreFlagged) {
  const auto t = paircorr::testing::genuine_prefix(1000);
  const std::vector<ExplicitGridPoint> grid = {{10.0, t[5].gamma}, {10.0, 50.0}};
  const auto rep = residual_report(t, small_sieve(), grid, {});
  ASSERT_EQ(rep.size(), 2u);
  EXPECT_TRUE(rep[0].near_zero);
  EXPECT_FALSE(rep[0].passed);
  EXPECT_FALSE(rep[1].near_zero);
  EXPECT_GT(rep[1].envelope, 0.0);
}

TEST(ResidualReport, SmallestXEnvelope) {
  const auto t = paircorr::testing::genuine_prefix(1000);
  const std::vector<ExplicitGridPoint> grid = {{1.0, 0.0}};
  const ExplicitBudget budget{10.0, 10.0, 10.0};
  const auto rep = residual_report(t, small_sieve(), grid, budget);
  EXPECT_GE(rep[0].envelope, budget.c1 + budget.c2);
}

TEST(ResidualReport, DroppedZerosAreDetected) {
  const auto& full = paircorr::testing::genuine_table();
  std::vector<ZetaZero> kept;
  int dropped = 0;
  for (const auto& z : full.zeros()) {
    if (z.gamma > 45.0 && z.gamma < 75.0 && dropped < 10) {
      ++dropped;
      continue;
    }
    kept.push_back(z);
  }
  const ZeroTable bad(kept, {}, full.coverage());
  const std::vector<ExplicitGridPoint> grid = {{100.0, 50.0}};
  const ExplicitBudget budget{10.0, 10.0, 10.0};
  const auto good = residual_report(full, small_sieve(), grid, budget);
  const auto broken = residual_report(bad, small_sieve(), grid, budget);
  EXPECT_TRUE(good[0].passed) << std::abs(good[0].residual) << " vs " << good[0].envelope;
  EXPECT_FALSE(broken[0].passed) << std::abs(broken[0].residual) << " vs " << broken[0].envelope;
}

}  // namespace
}  // namespace paircorr
