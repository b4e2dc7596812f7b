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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/hashing.hpp"

namespace paircorr {

/// One nontrivial zero rho = 1/2 + delta + i*gamma with gamma > 0.
struct ZetaZero {
  double delta = 0.0;
  double gamma = 0.0;
  int multiplicity = 1;

  double beta() const noexcept { return 0.5 + delta; }
  bool on_line() const noexcept { return delta == 0.0; }

  friend bool operator==(const ZetaZero&, const ZetaZero&) = default;
};

enum class ZeroFormat { ordinates_only, delta_gamma_csv };

struct Provenance {
  std::string source;    // file path or URL
  std::string checksum;  // sha256 of the raw bytes, empty for synthetic tables
  bool resorted = false; // input was not sorted by gamma
};

/// Immutable, gamma-sorted table of zeros.
///
/// `coverage()` is the height up to which the table claims to list every
/// zero. Parsed tables cover exactly up to their last ordinate; synthetic
/// tables may declare a larger height.
class ZeroTable {
 public:
  ZeroTable() = default;

  explicit ZeroTable(std::vector<ZetaZero> zeros, Provenance provenance = {},
                     double coverage = -1.0)
      : zeros_(std::move(zeros)), provenance_(std::move(provenance)) {
    for (std::size_t i = 0; i < zeros_.size(); ++i) check_zero(zeros_[i], i + 1);
    if (!std::is_sorted(zeros_.begin(), zeros_.end(), by_gamma)) {
      std::stable_sort(zeros_.begin(), zeros_.end(), by_gamma);
      provenance_.resorted = true;
    }
    gammas_.reserve(zeros_.size());
    cumulative_.reserve(zeros_.size());
    theta_prefix_.reserve(zeros_.size());
    std::int64_t running = 0;
    double theta = 0.0;
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
      const auto& z = zeros_[i];
      gammas_.push_back(z.gamma);
      running += z.multiplicity;
      cumulative_.push_back(running);
      theta = std::max(theta, 0.5 + std::abs(z.delta));
      theta_prefix_.push_back(theta);
      if (!z.on_line()) off_line_.push_back(i);
    }
    const double last = zeros_.empty() ? 0.0 : zeros_.back().gamma;
    coverage_ = coverage < 0.0 ? last : std::max(coverage, last);
  }

  std::span<const ZetaZero> zeros() const noexcept { return zeros_; }
  std::span<const double> gammas() const noexcept { return gammas_; }
  std::size_t size() const noexcept { return zeros_.size(); }
  bool empty() const noexcept { return zeros_.empty(); }
  const ZetaZero& operator[](std::size_t i) const { return zeros_[i]; }
  const Provenance& provenance() const noexcept { return provenance_; }

  double t_max() const noexcept { return zeros_.empty() ? 0.0 : zeros_.back().gamma; }
  double coverage() const noexcept { return coverage_; }
  bool all_on_line() const noexcept { return off_line_.empty(); }
  std::span<const std::size_t> off_line_indices() const noexcept { return off_line_; }

  /// Number of entries with 0 < gamma <= t.
  std::size_t index_up_to(double t) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), t) -
                                    gammas_.begin());
  }

  /// N(t): zeros with 0 < gamma <= t, counted with multiplicity.
  std::int64_t count_up_to(double t) const noexcept {
    const std::size_t n = index_up_to(t);
    return n == 0 ? 0 : cumulative_[n - 1];
  }

  /// max(1/2 + |delta|) over zeros with gamma <= t.
  double theta_up_to(double t) const {
    const std::size_t n = index_up_to(t);
    if (n == 0) throw DomainError("theta_up_to: no zeros with gamma <= " + std::to_string(t));
    return theta_prefix_[n - 1];
  }

  /// N(sigma, t): zeros with 1/2 + |delta| >= sigma and 0 < gamma <= t.
  std::int64_t count_density(double sigma, double t) const {
    if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("count_density: sigma must be in (0,1)");
    if (sigma <= 0.5) return count_up_to(t);
    std::int64_t n = 0;
    for (std::size_t i : off_line_) {
      const auto& z = zeros_[i];
      if (z.gamma > t) break;
      if (0.5 + std::abs(z.delta) >= sigma) n += z.multiplicity;
    }
    return n;
  }

  /// Throws ParseError (tagged with `pos`) if `z` violates a ZetaZero invariant.
  static void check_zero(const ZetaZero& z, std::size_t pos) {
    if (!(std::abs(z.delta) < 0.5))
      throw ParseError(pos, "delta out of range (|delta| must be < 1/2)");
    if (!(z.gamma > 0.0) || !std::isfinite(z.gamma))
      throw ParseError(pos, "gamma must be positive and finite");
    if (z.multiplicity < 1) throw ParseError(pos, "multiplicity must be >= 1");
  }

 private:
  static bool by_gamma(const ZetaZero& a, const ZetaZero& b) { return a.gamma < b.gamma; }

  std::vector<ZetaZero> zeros_;
  std::vector<double> gammas_;
  std::vector<std::int64_t> cumulative_;
  std::vector<double> theta_prefix_;
  std::vector<std::size_t> off_line_;
  Provenance provenance_;
  double coverage_ = 0.0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

inline bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace detail

/// Parses zero-table text. Ordinates-only files hold one gamma per line;
/// CSV files hold "delta,gamma[,multiplicity]" with an optional header.
/// Blank lines are ignored in both formats.
inline ZeroTable parse_zero_text(std::string_view text, ZeroFormat format,
                                 Provenance provenance = {}) {
  std::vector<ZetaZero> zeros;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;

    ZetaZero z;
    if (format == ZeroFormat::ordinates_only) {
      if (!detail::parse_double(line, z.gamma)) throw ParseError(line_no, "malformed ordinate");
    } else {
      std::vector<std::string_view> fields;
      std::string_view rest = line;
      for (;;) {
        const auto c = rest.find(',');
        fields.push_back(rest.substr(0, c));
        if (c == std::string_view::npos) break;
        rest = rest.substr(c + 1);
      }
      const bool ok = (fields.size() == 2 || fields.size() == 3) &&
                      detail::parse_double(fields[0], z.delta) &&
                      detail::parse_double(fields[1], z.gamma) &&
                      (fields.size() == 2 || detail::parse_int(fields[2], z.multiplicity));
      if (!ok) {
        if (!seen_data && detail::trim(fields[0]) == "delta") continue;  // header row
        throw ParseError(line_no, "malformed delta,gamma[,multiplicity] record");
      }
    }
    seen_data = true;
    ZeroTable::check_zero(z, line_no);
    zeros.push_back(z);
  }
  return ZeroTable(std::move(zeros), std::move(provenance));
}

inline ZeroTable parse_zero_file(const std::string& path, ZeroFormat format) {
  const std::string bytes = read_file_bytes(path);
  return parse_zero_text(bytes, format, Provenance{path, sha256_hex(bytes), false});
}

/// Inverse of parse_zero_text. Doubles are written in shortest round-trip form.
inline std::string serialize_zero_table(const ZeroTable& table, ZeroFormat format) {
  std::string out;
  for (const auto& z : table.zeros()) {
    if (format == ZeroFormat::ordinates_only) {
      if (!z.on_line() || z.multiplicity != 1)
        throw DomainError("ordinates-only format cannot hold off-line or repeated zeros");
      out += detail::format_double(z.gamma);
    } else {
      out += detail::format_double(z.delta);
      out += ',';
      out += detail::format_double(z.gamma);
      if (z.multiplicity != 1) {
        out += ',';
        out += std::to_string(z.multiplicity);
      }
    }
    out += '\n';
  }
  return out;
}

/// Main terms of the Riemann-von Mangoldt formula, (t/2pi) log(t/2pi) - t/2pi.
inline double rvm_estimate(double t) {
  if (!(t >= 3.0)) throw DomainError("rvm_estimate: t must be >= 3");
  const double u = t / (2.0 * std::numbers::pi);
  return u * std::log(u) - u;
}

struct RvmCheck {
  double t = 0.0;
  std::int64_t count = 0;
  double estimate = 0.0;
  double ratio = 0.0;  // |count - estimate| / log t
  bool passed = true;
};

struct RvmReport {
  bool passed = true;
  double slack_factor = 0.0;
  double worst_ratio = 0.0;
  double worst_t = 0.0;
  std::vector<RvmCheck> checks;

  std::vector<RvmCheck> failures() const {
    std::vector<RvmCheck> f;
    for (const auto& c : checks)
      if (!c.passed) f.push_back(c);
    return f;
  }
};

/// Checks |N(t) - rvm_estimate(t)| <= slack * log t at every grid point.
inline RvmReport validate_rvm(const ZeroTable& table, std::span<const double> t_grid,
                              double slack_factor) {
  RvmReport report;
  report.slack_factor = slack_factor;
  for (double t : t_grid) {
    if (t > table.coverage())
      throw CoverageError("validate_rvm: t = " + detail::format_double(t) +
                          " exceeds table coverage " + detail::format_double(table.coverage()));
    RvmCheck c;
    c.t = t;
    c.count = table.count_up_to(t);
    c.estimate = rvm_estimate(t);
    c.ratio = std::abs(static_cast<double>(c.count) - c.estimate) / std::log(t);
    c.passed = c.ratio <= slack_factor;
    if (c.ratio > report.worst_ratio || report.checks.empty()) {
      report.worst_ratio = c.ratio;
      report.worst_t = t;
    }
    report.passed = report.passed && c.passed;
    report.checks.push_back(c);
  }
  return report;
}

/// Largest multiplicity-weighted number of zeros in any closed window
/// [g, g+1] among zeros with gamma <= t.
inline std::int64_t max_unit_window_count(const ZeroTable& table, double t) {
  const std::size_t n = table.index_up_to(t);
  const auto zeros = table.zeros();
  std::int64_t best = 0, window = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < n; ++lo) {
    while (hi < n && zeros[hi].gamma <= zeros[lo].gamma + 1.0) window += zeros[hi++].multiplicity;
    best = std::max(best, window);
    window -= zeros[lo].multiplicity;
  }
  return best;
}

}  // namespace paircorr
