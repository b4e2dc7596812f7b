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

#include <random>

#include "paircorr/zero_table.hpp"
#include "test_support.hpp"

namespace paircorr {
namespace {

using testing::TempDir;

TEST(ParseZeroFile, OrdinatesOnly) {
  TempDir dir;
  const auto path = dir.write("z.txt", "14.134725\n21.022040\n");
  const auto table = parse_zero_file(path, ZeroFormat::ordinates_only);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].delta, 0.0);
  EXPECT_EQ(table[1].delta, 0.0);
  EXPECT_DOUBLE_EQ(table.t_max(), 21.022040);
  EXPECT_EQ(table.provenance().source, path);
  EXPECT_EQ(table.provenance().checksum.size(), 64u);
  EXPECT_FALSE(table.provenance().resorted);
}

TEST(ParseZeroFile, BlankLinesAndWhitespaceIgnored) {
  const auto table = parse_zero_text("\n  14.134725  \r\n\n21.022040\n\n", ZeroFormat::ordinates_only);
  EXPECT_EQ(table.size(), 2u);
}

TEST(ParseZeroFile, MirroredOffLinePair) {
  const auto table = parse_zero_text("0.01,100.0\n-0.01,100.0\n", ZeroFormat::delta_gamma_csv);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_DOUBLE_EQ(table[0].delta, 0.01);
  EXPECT_DOUBLE_EQ(table[1].delta, -0.01);
  EXPECT_DOUBLE_EQ(table[0].gamma, 100.0);
  EXPECT_FALSE(table.all_on_line());
}

TEST(ParseZeroFile, CsvHeaderAndMultiplicity) {
  const auto table = parse_zero_text("delta,gamma,multiplicity\n0,14.1,2\n0.1,30,1\n",
                                     ZeroFormat::delta_gamma_csv);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].multiplicity, 2);
  EXPECT_EQ(table.count_up_to(100.0), 3);
}

TEST(ParseZeroFile, DeltaOutOfRangeRejected) {
  EXPECT_THROW(parse_zero_text("0.6,50.0", ZeroFormat::delta_gamma_csv), ParseError);
  EXPECT_THROW(parse_zero_text("-0.5,50.0", ZeroFormat::delta_gamma_csv), ParseError);
}

TEST(ParseZeroFile, MalformedLineReportsLineNumber) {
  try {
    parse_zero_text("14.1\n21.0\nabc\n", ZeroFormat::ordinates_only);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.exit_code(), 3);
  }
  EXPECT_THROW(parse_zero_text("0.1;20\n", ZeroFormat::delta_gamma_csv), ParseError);
  EXPECT_THROW(parse_zero_text("0,20,0\n", ZeroFormat::delta_gamma_csv), ParseError);
  EXPECT_THROW(parse_zero_text("-3.0\n", ZeroFormat::ordinates_only), ParseError);
}

TEST(ParseZeroFile, UnsortedInputIsSortedAndFlagged) {
  const auto table = parse_zero_text("21.02\n14.13\n", ZeroFormat::ordinates_only);
  EXPECT_TRUE(table.provenance().resorted);
  EXPECT_DOUBLE_EQ(table[0].gamma, 14.13);
}

TEST(ParseZeroFile, ExtraDigitsAreTruncatedNotRejected) {
  const auto table =
      parse_zero_text("14.134725141734693790457251983562470270784257115699\n",
                      ZeroFormat::ordinates_only);
  EXPECT_DOUBLE_EQ(table[0].gamma, 14.134725141734694);
}

TEST(ZeroTable, RoundTripIsIdempotent) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gam(1.0, 500.0), del(-0.49, 0.49);
  std::uniform_int_distribution<int> mult(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ZetaZero> zs;
    for (int i = 0; i < 50; ++i) zs.push_back({i % 3 ? 0.0 : del(rng), gam(rng), mult(rng)});
    const ZeroTable table(zs);
    const auto text = serialize_zero_table(table, ZeroFormat::delta_gamma_csv);
    const auto back = parse_zero_text(text, ZeroFormat::delta_gamma_csv);
    ASSERT_EQ(back.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) EXPECT_EQ(back[i], table[i]);
    EXPECT_EQ(serialize_zero_table(back, ZeroFormat::delta_gamma_csv), text);
  }
}

TEST(CountUpTo, Basics) {
  const ZeroTable table({{0, 14.13}, {0, 21.02}});
  EXPECT_EQ(table.count_up_to(20.0), 1);
  EXPECT_EQ(table.count_up_to(0.0), 0);
  EXPECT_EQ(table.count_up_to(21.02), 2);
}

TEST(CountUpTo, MonotoneAndEqualsSizeAtTmax) {
  const auto& table = testing::genuine_table();
  std::int64_t prev = 0;
  for (double t = 0; t <= table.t_max() + 10; t += 37.3) {
    const auto c = table.count_up_to(t);
    EXPECT_GE(c, prev);
    prev = c;
  }
  EXPECT_EQ(table.count_up_to(table.t_max()), static_cast<std::int64_t>(table.size()));
}

TEST(CountUpTo, GenuineTableBelowHundred) {
  EXPECT_EQ(testing::genuine_table().count_up_to(100.0), 29);
  EXPECT_EQ(testing::genuine_table().size(), 100000u);
}

TEST(RvmEstimate, Values) {
  EXPECT_NEAR(rvm_estimate(2.0 * std::numbers::pi * std::numbers::e), 0.0, 1e-13);
  EXPECT_NEAR(rvm_estimate(100.0), 28.12734358732535, 1e-10);
  EXPECT_NEAR(rvm_estimate(1000.0), 647.7412353129674, 1e-9);
  EXPECT_THROW(rvm_estimate(2.9), DomainError);
}

TEST(ValidateRvm, GenuineTablePasses) {
  const auto& table = testing::genuine_table();
  const std::vector<double> grid = {50, 100, 1e3, 1e4, table.t_max()};
  const auto rep = validate_rvm(table, grid, 2.0);
  EXPECT_TRUE(rep.passed) << "worst ratio " << rep.worst_ratio << " at " << rep.worst_t;
  EXPECT_EQ(rep.checks.size(), grid.size());
}

ZeroTable delete_near_500(std::size_t k) {
  const auto table = testing::genuine_prefix(2000);
  std::vector<ZetaZero> zs(table.zeros().begin(), table.zeros().end());
  const auto it = std::lower_bound(zs.begin(), zs.end(), 500.0,
                                   [](const ZetaZero& z, double g) { return z.gamma < g; });
  zs.erase(it, it + static_cast<long>(k));
  return ZeroTable(zs);
}

TEST(ValidateRvm, FiveDeletedZerosStayWithinSlackTwo) {
  // A deficit of 5 is below 2 log t for t >= 500, so slack 2 cannot see it;
  // the counts still move by exactly 5.
  const auto genuine = testing::genuine_prefix(2000);
  const auto corrupt = delete_near_500(5);
  const std::vector<double> grid = {100, 400, 600, 1000};
  const auto a = validate_rvm(genuine, grid, 2.0), b = validate_rvm(corrupt, grid, 2.0);
  EXPECT_TRUE(b.passed);
  for (std::size_t i = 0; i < grid.size(); ++i)
    EXPECT_EQ(a.checks[i].count - b.checks[i].count, grid[i] < 500 ? 0 : 5);
}

TEST(ValidateRvm, DeletedZerosFail) {
  const auto corrupt = delete_near_500(20);
  const std::vector<double> grid = {100, 400, 600, 1000};
  const auto rep = validate_rvm(corrupt, grid, 2.0);
  EXPECT_FALSE(rep.passed);
  for (const auto& c : rep.checks) EXPECT_EQ(c.passed, c.t < 500) << c.t;
  EXPECT_EQ(rep.failures().size(), 2u);
}

TEST(ValidateRvm, EmptyGridIsVacuous) {
  const auto rep = validate_rvm(testing::genuine_prefix(10), {}, 2.0);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.checks.empty());
}

TEST(ValidateRvm, GridBeyondCoverageRejected) {
  const auto table = testing::genuine_prefix(10);
  const std::vector<double> grid = {1000.0};
  EXPECT_THROW(validate_rvm(table, grid, 2.0), CoverageError);
}

TEST(ThetaUpTo, Cases) {
  EXPECT_EQ(testing::genuine_prefix(100).theta_up_to(200.0), 0.5);
  const ZeroTable table({{0, 14.13}, {0.01, 50.0}, {-0.2, 150.0}});
  EXPECT_DOUBLE_EQ(table.theta_up_to(100.0), 0.51);
  EXPECT_DOUBLE_EQ(table.theta_up_to(200.0), 0.7);
  EXPECT_THROW(table.theta_up_to(10.0), DomainError);
}

TEST(ThetaUpTo, MonotoneInT) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gam(1.0, 100.0), del(-0.4, 0.4);
  std::vector<ZetaZero> zs;
  for (int i = 0; i < 200; ++i) zs.push_back({del(rng), gam(rng), 1});
  const ZeroTable table(zs);
  double prev = 0.0;
  for (double t = table[0].gamma; t < 110.0; t += 0.5) {
    const double th = table.theta_up_to(t);
    EXPECT_GE(th, prev);
    prev = th;
  }
}

TEST(CountDensity, Cases) {
  const auto online = testing::genuine_prefix(100);
  EXPECT_EQ(online.count_density(0.6, 200.0), 0);
  EXPECT_EQ(online.count_density(0.5, 200.0), online.count_up_to(200.0));
  const ZeroTable synth({{0.2, 10}, {-0.2, 20}, {0.2, 30}, {0.0, 40}, {0.2, 90}});
  EXPECT_EQ(synth.count_density(0.7, 50.0), 3);
  EXPECT_EQ(synth.count_density(0.71, 50.0), 0);
  EXPECT_THROW(synth.count_density(1.0, 50.0), DomainError);
}

TEST(MaxUnitWindow, CountsClosedWindows) {
  const ZeroTable table({{0, 1.0}, {0, 1.5}, {0, 2.0}, {0, 3.5}, {0, 10.0, 3}});
  EXPECT_EQ(max_unit_window_count(table, 5.0), 3);
  EXPECT_EQ(max_unit_window_count(table, 20.0), 3);
  EXPECT_EQ(max_unit_window_count(ZeroTable{}, 5.0), 0);
}

}  // namespace
}  // namespace paircorr
