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

// paircorr command-line front end. Every subcommand reads a zero table
// (path or URL), runs one engine and writes CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "paircorr/paircorr.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace paircorr;

namespace {

constexpr int kSchemaVersion = 1;

#ifndef PAIRCORR_DATA_DIR
#define PAIRCORR_DATA_DIR "data"
#endif

struct Common {
  std::string zeros = std::string(PAIRCORR_DATA_DIR) + "/zeros_1e5.txt";
  std::string zeros_format = "ordinates";
  std::string cache_dir = ".paircorr-cache";
  std::string checksum;
  std::string output;
  std::string format;  // csv | json; each command has its own default
  double tol = 1e-10;
  unsigned threads = 0;
  bool no_timestamp = false;

  ParallelOptions parallel() const { return {threads, 256}; }
};

ZeroFormat parse_format(const std::string& s) {
  if (s == "ordinates") return ZeroFormat::ordinates_only;
  if (s == "csv") return ZeroFormat::delta_gamma_csv;
  throw DomainError("unknown zeros format '" + s + "' (ordinates|csv)");
}

ZeroTable load_zeros(const Common& c) {
  const auto fmt = parse_format(c.zeros_format);
  if (c.zeros.rfind("http://", 0) == 0 || c.zeros.rfind("https://", 0) == 0) {
    std::optional<std::string> sum;
    if (!c.checksum.empty()) sum = c.checksum;
    return fetch_remote_table(c.zeros, c.cache_dir, sum, fmt);
  }
  auto t = parse_zero_file(c.zeros, fmt);
  if (!c.checksum.empty() && c.checksum != t.provenance().checksum)
    throw IntegrityError("checksum mismatch for " + c.zeros);
  return t;
}

// "a:b:step" or "v1,v2,...".
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
      double v;
      if (!detail::parse_double(detail::trim(item), v)) throw DomainError("bad range '" + spec + "'");
      parts.push_back(v);
    }
    if (parts.size() != 3 || !(parts[2] > 0.0)) throw DomainError("range must be lo:hi:step");
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = detail::trim(item);
    if (t.empty()) continue;
    double v;
    if (!detail::parse_double(t, v)) throw DomainError("bad grid value '" + std::string(t) + "'");
    out.push_back(v);
  }
  return out;
}

Kernel resolve_kernel(const std::string& name) {
  if (name == "fejer") return fejer_kernel();
  if (name == "mt" || name == "montgomery-taylor") return montgomery_taylor_kernel();
  if (fs::is_regular_file(name)) return load_kernel_file(name);
  throw DomainError("unknown kernel '" + name + "' (fejer|mt|<file>)");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string num(double v) { return detail::format_double(v); }

/// Destination for one command's output. CSV rows go out as they are
/// produced so a failure leaves the finished rows plus a marker row.
class Sink {
 public:
  explicit Sink(const Common& c) {
    if (!c.output.empty()) {
      file_.open(c.output, std::ios::binary);
      if (!file_) throw Error(ErrorKind::io, "cannot open " + c.output);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out() << (i ? "," : "") << csv_field(fields[i]);
    out() << "\r\n";
    out().flush();
  }

 private:
  std::ofstream file_;
};

json envelope(const Common& c, const std::string& command, const ZeroTable* table) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  if (table) {
    j["zeros_source"] = table->provenance().source;
    j["zeros_checksum"] = table->provenance().checksum;
    j["zeros_resorted"] = table->provenance().resorted;
  }
  if (!c.no_timestamp) j["generated_at"] = detail::utc_timestamp();
  return j;
}

void emit_json(const Common& c, const json& j) {
  Sink s(c);
  s.out() << j.dump(2) << '\n';
}

// CSV preamble: a schema/provenance comment row keeps files self-describing.
void csv_preamble(Sink& s, const Common& c, const ZeroTable* table) {
  std::vector<std::string> r = {"#schema_version=" + std::to_string(kSchemaVersion)};
  if (table) r.push_back("zeros_checksum=" + table->provenance().checksum);
  if (!c.no_timestamp) r.push_back("generated_at=" + detail::utc_timestamp());
  s.row(r);
}

template <class F>
void with_failure_marker(Sink& s, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    s.row({"#FAILED", e.what()});
    throw;
  }
}

std::vector<double> default_rvm_grid(const ZeroTable& t) {
  std::vector<double> g;
  for (double v : {50.0, 100.0, 1e3, 1e4}) {
    if (v <= t.coverage()) g.push_back(v);
  }
  if (t.t_max() >= 3.0) g.push_back(t.t_max());
  return g;
}

json rvm_json(const RvmReport& r) {
  json j;
  j["passed"] = r.passed;
  j["slack_factor"] = r.slack_factor;
  j["worst_ratio"] = r.worst_ratio;
  j["worst_t"] = r.worst_t;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"t", c.t}, {"count", c.count}, {"estimate", c.estimate},
                      {"ratio", c.ratio}, {"passed", c.passed}});
  j["checks"] = checks;
  return j;
}

json bound_json(const SimpleZeroBound& b) {
  return {{"kernel", b.kernel_name},   {"khat0", b.khat0},
          {"alpha_moment", b.alpha_moment}, {"piK0", b.piK0},
          {"mean_multiplicity", b.mean_multiplicity()}, {"bound", b.bound()},
          {"quadrature_error", b.quadrature_error}};
}

// ---------------------------------------------------------------- commands

int cmd_fetch(const Common& c, double slack) {
  const auto t = load_zeros(c);
  const auto grid = default_rvm_grid(t);
  const auto rep = validate_rvm(t, grid, slack);
  auto j = envelope(c, "fetch", &t);
  j["zeros"] = t.size();
  j["t_max"] = t.t_max();
  j["rvm"] = rvm_json(rep);
  emit_json(c, j);
  return rep.passed ? 0 : static_cast<int>(ErrorKind::validation);
}

int cmd_validate(const Common& c, const std::string& grid_spec, double slack) {
  const auto t = load_zeros(c);
  const auto grid = grid_spec.empty() ? default_rvm_grid(t) : parse_grid(grid_spec);
  const auto rep = validate_rvm(t, grid, slack);
  auto j = envelope(c, "validate", &t);
  j["zeros"] = t.size();
  j["rvm"] = rvm_json(rep);
  emit_json(c, j);
  return rep.passed ? 0 : static_cast<int>(ErrorKind::validation);
}

int cmd_fcurve(const Common& c, const std::string& alphas_spec, std::optional<double> T_opt,
               const std::string& mode, double band) {
  const auto alphas = parse_grid(alphas_spec);
  if (alphas.empty()) throw DomainError("fcurve: empty alpha grid");
  if (mode != "exact" && mode != "banded") throw DomainError("fcurve: mode must be exact|banded");
  const auto t = load_zeros(c);
  const double T = T_opt.value_or(t.t_max());
  const PairMode pm = mode == "exact" ? PairMode::exact() : PairMode::banded(band);
  if (T > t.coverage()) throw CoverageError("fcurve: T exceeds table coverage");

  if (c.format == "json") {
    const auto curve = f_alpha_curve(t, T, alphas, pm, c.parallel());
    auto j = envelope(c, "fcurve", &t);
    j["T"] = T;
    j["mode"] = mode;
    if (mode == "banded") j["band"] = band;
    j["normalization"] = curve.normalization;
    json rows = json::array();
    for (std::size_t i = 0; i < curve.alphas.size(); ++i)
      rows.push_back({{"alpha", curve.alphas[i]}, {"empirical", curve.empirical[i]},
                      {"theoretical", curve.theoretical[i]},
                      {"truncation_bound", curve.truncation_bound[i]},
                      {"pairs_evaluated", curve.pairs_evaluated[i]}});
    j["rows"] = rows;
    emit_json(c, j);
    return 0;
  }
  Sink s(c);
  csv_preamble(s, c, &t);
  s.row({"alpha", "empirical", "theoretical", "truncation_bound", "pairs_evaluated"});
  with_failure_marker(s, [&] {
    for (double a : alphas) {
      const std::vector<double> one = {a};
      const auto curve = f_alpha_curve(t, T, one, pm, c.parallel());
      s.row({num(a), num(curve.empirical[0]), num(curve.theoretical[0]),
             num(curve.truncation_bound[0]), std::to_string(curve.pairs_evaluated[0])});
    }
  });
  return 0;
}

int cmd_kernel(const Common& c, const std::string& name, double x_max, double step,
               double bound_C) {
  std::vector<Kernel> kernels;
  if (name == "all") {
    kernels = {fejer_kernel(), montgomery_taylor_kernel()};
  } else {
    kernels.push_back(resolve_kernel(name));
  }
  auto j = envelope(c, "kernel", nullptr);
  json reports = json::array();
  bool ok = true;
  for (const auto& k : kernels) {
    const auto rep = verify_tsang_properties(k, {x_max, step, {0.0, 0.45, -0.45, 0.9, -0.9}},
                                             bound_C, c.tol);
    const auto d = kernel_decay(k);
    json v = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(rep.violations.size(), 20); ++i) {
      const auto& x = rep.violations[i];
      v.push_back({{"property", std::string(1, x.property)}, {"re_z", x.z.real()},
                   {"im_z", x.z.imag()}, {"margin", x.margin}});
    }
    reports.push_back({{"kernel", k.name()},
                       {"j0", k.j_at_0()},
                       {"K0", k_of_z(k, 0.0, c.tol).value.real()},
                       {"property_a", rep.property_a},
                       {"property_b", rep.property_b},
                       {"property_c", rep.property_c},
                       {"smooth", rep.smooth},
                       {"bound_C", rep.bound_C},
                       {"max_decay_ratio", rep.max_decay_ratio},
                       {"min_real_margin", rep.min_real_margin},
                       {"decay_endpoint", d.endpoint},
                       {"decay_curvature", d.curvature},
                       {"samples", rep.samples},
                       {"violations", rep.violations.size()},
                       {"first_violations", v}});
    ok = ok && rep.passed();
  }
  j["reports"] = reports;
  emit_json(c, j);
  return ok ? 0 : static_cast<int>(ErrorKind::validation);
}

int cmd_simple_bound(const Common& c, const std::string& name) {
  auto j = envelope(c, "simple-bound", nullptr);
  if (name == "all") {
    json arr = json::array();
    for (const auto& k : {fejer_kernel(), montgomery_taylor_kernel()})
      arr.push_back(bound_json(simple_zero_bound(k, std::min(c.tol, 1e-13))));
    j["bounds"] = arr;
  } else {
    j["bound"] = bound_json(simple_zero_bound(resolve_kernel(name), std::min(c.tol, 1e-13)));
  }
  emit_json(c, j);
  return 0;
}

int cmd_pair_kernel_sum(const Common& c, const std::string& kernels_spec,
                        const std::string& T_spec, std::optional<double> band_opt,
                        bool grid_cache) {
  const auto t = load_zeros(c);
  std::vector<double> Ts = T_spec.empty() ? std::vector<double>{t.t_max()} : parse_grid(T_spec);
  std::vector<Kernel> kernels;
  if (kernels_spec == "all") {
    kernels = {fejer_kernel(), montgomery_taylor_kernel()};
  } else {
    kernels.push_back(resolve_kernel(kernels_spec));
  }
  KernelSumOptions opts;
  opts.use_grid_cache = grid_cache;
  opts.parallel = c.parallel();
  Sink s(c);
  csv_preamble(s, c, &t);
  s.row({"kernel", "T", "band", "close_sum", "s_of_t", "rhs_main", "ratio", "truncation_bound",
         "numerical_error", "close_pairs", "non_positive_terms", "multiplicity_bound",
         "zero_count"});
  with_failure_marker(s, [&] {
    for (const auto& k : kernels) {
      const double piK0 = simple_zero_bound(k).piK0;
      for (double T : Ts) {
        const double band = band_opt.value_or(default_kernel_band(T));
        const auto r = kernel_pair_sum(t, k, T, c.tol, band, opts);
        s.row({k.name(), num(T), num(band), num(r.close_sum), num(r.s_of_t), num(r.rhs_main),
               num(r.ratio()), num(r.truncation_bound), num(r.numerical_error),
               std::to_string(r.close_pairs), std::to_string(r.non_positive_terms),
               num(r.close_sum / (2.0 * piK0)), std::to_string(t.count_up_to(T))});
      }
    }
  });
  return 0;
}

struct ExplicitArgs {
  std::string xs = "10,100,1000";
  std::string ts = "10,50,200";
  std::size_t sieve_limit = 10'000'000;
  double c1 = 10.0, c2 = 10.0, c3 = 10.0;
};

int cmd_explicit(const Common& c, const ExplicitArgs& a) {
  const auto t = load_zeros(c);
  const auto vm = sieve_von_mangoldt(a.sieve_limit);
  std::vector<ExplicitGridPoint> grid;
  for (double x : parse_grid(a.xs))
    for (double tt : parse_grid(a.ts)) grid.push_back({x, tt});
  if (grid.empty()) throw DomainError("explicit-check: empty grid");
  Sink s(c);
  csv_preamble(s, c, &t);
  s.row({"x", "t", "re_residual", "im_residual", "envelope", "status"});
  bool ok = true;
  with_failure_marker(s, [&] {
    for (const auto& p : grid) {
      const std::vector<ExplicitGridPoint> one = {p};
      const auto r = residual_report(t, vm, one, {a.c1, a.c2, a.c3})[0];
      const char* status = r.near_zero ? "skipped" : (r.passed ? "pass" : "fail");
      ok = ok && (r.passed || r.near_zero);
      s.row({num(r.x), num(r.t), num(r.residual.real()), num(r.residual.imag()),
             num(r.envelope), status});
    }
  });
  return ok ? 0 : static_cast<int>(ErrorKind::validation);
}

int cmd_density(const Common& c, const std::string& sigmas, std::optional<double> T_opt) {
  const auto t = load_zeros(c);
  const double T = T_opt.value_or(t.t_max());
  if (T > t.coverage()) throw CoverageError("density-plot: T exceeds table coverage");
  Sink s(c);
  csv_preamble(s, c, &t);
  s.row({"sigma", "T", "count", "hypothesis_curve", "theta"});
  with_failure_marker(s, [&] {
    for (double sigma : parse_grid(sigmas)) {
      s.row({num(sigma), num(T), std::to_string(t.count_density(sigma, T)),
             num(density_hypothesis_curve(sigma, T)), num(t.theta_up_to(T))});
    }
  });
  return 0;
}

// ---------------------------------------------------------------- verify

struct CheckOutcome {
  bool passed = false;
  json detail;
};

struct VerifyArgs {
  std::vector<std::string> only;
  double bound_C = 0.8;
  std::size_t sieve_limit = 10'000'000;
  double c1 = 10.0, c2 = 10.0, c3 = 10.0;
};

CheckOutcome check_residue() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(-0.9, 0.9);
  CheckOutcome o{true, json::array()};
  for (int i = 0; i < 20; ++i) {
    const cplx a(re(rng), im(rng));
    const auto r = verify_residue_integral(a, 1e-8);
    o.passed = o.passed && r.passed;
    o.detail.push_back({{"re_a", a.real()}, {"im_a", a.imag()},
                        {"error", std::abs(r.quadrature - r.closed_form)}, {"passed", r.passed}});
  }
  return o;
}

CheckOutcome check_integral_representation() {
  std::mt19937_64 rng(20260102);
  std::uniform_int_distribution<int> count(1, 50);
  std::uniform_real_distribution<double> g(10.0, 120.0), d(-0.1, 0.1), coin(0.0, 1.0);
  CheckOutcome o{true, json::array()};
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<ZetaZero> zs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) zs.push_back({coin(rng) < 0.5 ? d(rng) : 0.0, g(rng)});
    const ZeroTable table(zs);
    for (double x : {1.0, 2.0, 10.0}) {
      const auto r = verify_integral_representation(table, x, table.t_max(), 1e-6);
      o.passed = o.passed && r.passed;
      o.detail.push_back({{"zeros", n}, {"x", x}, {"difference", r.difference},
                          {"certificate", r.certificate}, {"passed", r.passed}});
    }
  }
  return o;
}

CheckOutcome check_banded(const ZeroTable& full, const Common& c) {
  const std::size_t n = std::min<std::size_t>(1000, full.size());
  if (n == 0) return {false, {{"error", "empty table"}}};
  const ZeroTable t(std::vector<ZetaZero>(full.zeros().begin(), full.zeros().begin() + n));
  const double T = t.t_max();
  std::mt19937_64 rng(20260103);
  std::uniform_real_distribution<double> lx(0.0, std::log(T)), lb(std::log(0.5), std::log(T));
  CheckOutcome o{true, json::object()};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(lx(rng)), band = std::exp(lb(rng));
    const auto e = f_exact(t, x, T, c.parallel());
    const auto b = f_banded(t, x, T, band, c.parallel());
    const double diff = std::abs(e.value - b.value);
    worst = std::max(worst, b.truncation_bound > 0 ? diff / b.truncation_bound : diff);
    o.passed = o.passed && diff <= b.truncation_bound;
  }
  o.detail = {{"zeros", n}, {"configs", 100}, {"worst_diff_over_bound", worst}};
  return o;
}

CheckOutcome check_rvm(const ZeroTable& t) {
  const auto rep = validate_rvm(t, default_rvm_grid(t), 2.0);
  return {rep.passed, rvm_json(rep)};
}

CheckOutcome check_tsang(const Common& c, double bound_C) {
  CheckOutcome o{true, json::array()};
  for (const auto& k : {fejer_kernel(), montgomery_taylor_kernel()}) {
    const auto rep = verify_tsang_properties(k, TsangGrid{}, bound_C, std::min(c.tol, 1e-12));
    o.passed = o.passed && rep.passed();
    o.detail.push_back({{"kernel", k.name()}, {"property_a", rep.property_a},
                        {"property_b", rep.property_b}, {"property_c", rep.property_c},
                        {"max_decay_ratio", rep.max_decay_ratio},
                        {"min_real_margin", rep.min_real_margin}});
  }
  return o;
}

CheckOutcome check_explicit(const ZeroTable& t, const VerifyArgs& a) {
  const auto vm = sieve_von_mangoldt(a.sieve_limit);
  std::vector<ExplicitGridPoint> grid;
  for (double x : {10.0, 100.0, 1000.0})
    for (double tt : {10.0, 50.0, 200.0}) grid.push_back({x, tt});
  CheckOutcome o{true, json::array()};
  for (const auto& r : residual_report(t, vm, grid, {a.c1, a.c2, a.c3})) {
    o.passed = o.passed && (r.passed || r.near_zero);
    o.detail.push_back({{"x", r.x}, {"t", r.t}, {"residual", std::abs(r.residual)},
                        {"envelope", r.envelope}, {"passed", r.passed}});
  }
  return o;
}

CheckOutcome check_constants() {
  const auto f = simple_zero_bound(fejer_kernel());
  const auto m = simple_zero_bound(montgomery_taylor_kernel());
  const bool ok = std::abs(f.piK0 - 0.4640648392) <= 1e-9 &&
                  std::abs(f.alpha_moment - 0.2913876354) <= 1e-9 &&
                  std::abs(f.bound() - 0.608612927) <= 1e-8 &&
                  std::abs(m.khat0 - 1.0061271908) <= 1e-9 &&
                  std::abs(m.alpha_moment - 0.2832624869) <= 1e-9 &&
                  std::abs(m.piK0 - 0.4663199124) <= 1e-9 &&
                  std::abs(m.bound() - 0.617483786) <= 1e-8;
  return {ok, json::array({bound_json(f), bound_json(m)})};
}

int cmd_verify(const Common& c, const VerifyArgs& a) {
  static const std::vector<std::string> kAll = {"constants", "residue-integral", "integral-representation",
                                                "banded-oracle", "rvm", "tsang",
                                                "explicit-formula"};
  for (const auto& name : a.only)
    if (std::find(kAll.begin(), kAll.end(), name) == kAll.end())
      throw DomainError("verify: unknown check '" + name + "'");
  auto wanted = [&](const std::string& n) {
    return a.only.empty() || std::find(a.only.begin(), a.only.end(), n) != a.only.end();
  };
  const bool needs_table = wanted("banded-oracle") || wanted("rvm") || wanted("explicit-formula");
  std::optional<ZeroTable> table;
  if (needs_table) table = load_zeros(c);

  auto j = envelope(c, "verify", table ? &*table : nullptr);
  json checks = json::object();
  std::vector<std::string> failed;
  auto run = [&](const std::string& name, auto&& fn) {
    if (!wanted(name)) return;
    CheckOutcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, {{"error", e.what()}}};
    }
    checks[name] = {{"passed", o.passed}, {"detail", o.detail}};
    if (!o.passed) failed.push_back(name);
  };
  run("constants", [] { return check_constants(); });
  run("residue-integral", [] { return check_residue(); });
  run("integral-representation", [] { return check_integral_representation(); });
  run("banded-oracle", [&] { return check_banded(*table, c); });
  run("rvm", [&] { return check_rvm(*table); });
  run("tsang", [&] { return check_tsang(c, a.bound_C); });
  run("explicit-formula", [&] { return check_explicit(*table, a); });
  j["checks"] = checks;
  j["failed"] = failed;
  j["passed"] = failed.empty();
  emit_json(c, j);
  return failed.empty() ? 0 : static_cast<int>(ErrorKind::validation);
}

// CLI11 reads config files only at the top level, so each subcommand's
// --config is applied by hand. Keys already given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    CLI::Option* opt = item.parents.empty() && item.name != "config"
                           ? sub->get_option_no_throw("--" + item.name)
                           : nullptr;
    if (opt == nullptr)
      throw CLI::ConfigError::Extras(item.fullname());
    if (opt->count() > 0) continue;
    for (const auto& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paircorr: pair correlation of zeta zeros"};
  app.require_subcommand(1);

  Common c;
  std::map<CLI::App*, std::string> config_paths;
  if (const char* env = std::getenv("PAIRCORR_CACHE")) c.cache_dir = env;
  auto add_common = [&](CLI::App* sub, bool with_table) {
    sub->add_option("--config", config_paths[sub], "flat key=value file; keys mirror long flag names");
    if (with_table) {
      sub->add_option("--zeros", c.zeros, "zero table path or http(s) URL");
      sub->add_option("--zeros-format", c.zeros_format, "ordinates|csv");
      sub->add_option("--cache-dir", c.cache_dir, "download cache (env PAIRCORR_CACHE)");
      sub->add_option("--checksum", c.checksum, "expected sha256 of the table");
    }
    sub->add_option("--output,-o", c.output, "output file (default stdout)");
    sub->add_option("--tol", c.tol, "absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "worker threads (0 = auto)");
    sub->add_flag("--no-timestamp", c.no_timestamp, "omit generation time for byte-stable output");
  };

  double slack = 2.0;
  auto* fetch = app.add_subcommand("fetch", "download, cache and validate a table");
  add_common(fetch, true);
  fetch->add_option("--slack", slack);

  std::string rvm_grid;
  auto* validate = app.add_subcommand("validate", "Riemann-von Mangoldt check of a table");
  add_common(validate, true);
  validate->add_option("--grid", rvm_grid, "t values, list or lo:hi:step");
  validate->add_option("--slack", slack);

  std::string alphas = "0.1:1.0:0.1", mode = "banded";
  std::optional<double> T;
  double band = 50.0;
  auto* fcurve = app.add_subcommand("fcurve", "empirical F(alpha) against its main terms");
  add_common(fcurve, true);
  fcurve->add_option("--alphas", alphas, "alpha list or lo:hi:step");
  fcurve->add_option("--T", T, "height (default: t_max)");
  fcurve->add_option("--mode", mode, "exact|banded");
  fcurve->add_option("--band", band, "gamma band for banded mode");
  fcurve->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  std::string kernel_name = "all";
  double x_max = 50.0, x_step = 0.1, bound_C = 0.8;
  auto* kernel = app.add_subcommand("kernel", "Tsang property grid for a kernel");
  add_common(kernel, false);
  kernel->add_option("--kernel", kernel_name, "fejer|mt|all|<file>");
  kernel->add_option("--x-max", x_max);
  kernel->add_option("--x-step", x_step);
  kernel->add_option("--bound-C", bound_C, "envelope constant for property (b)");

  std::string sb_kernel = "all";
  auto* simple = app.add_subcommand("simple-bound", "closed-form simple-zero proportion");
  add_common(simple, false);
  simple->add_option("--kernel", sb_kernel, "fejer|mt|all|<file>");

  std::string pks_kernel = "all", pks_T;
  std::optional<double> pks_band;
  bool grid_cache = false;
  auto* pks = app.add_subcommand("pair-kernel-sum", "kernel-weighted pair sums over a table");
  add_common(pks, true);
  pks->add_option("--kernel", pks_kernel, "fejer|mt|all|<file>");
  pks->add_option("--T", pks_T, "heights, list or lo:hi:step (default: t_max)");
  pks->add_option("--band", pks_band, "gamma band (default 60 pi / log T)");
  pks->add_flag("--grid-cache", grid_cache, "tabulate K on the real axis");

  ExplicitArgs ea;
  auto* expl = app.add_subcommand("explicit-check", "both sides of the explicit formula");
  add_common(expl, true);
  expl->add_option("--x", ea.xs);
  expl->add_option("--t", ea.ts);
  expl->add_option("--sieve-limit", ea.sieve_limit);
  expl->add_option("--c1", ea.c1);
  expl->add_option("--c2", ea.c2);
  expl->add_option("--c3", ea.c3);

  std::string sigmas = "0.5:0.95:0.05";
  std::optional<double> dT;
  auto* density = app.add_subcommand("density-plot", "N(sigma, T) against T^{2(1-sigma)}");
  add_common(density, true);
  density->add_option("--sigmas", sigmas);
  density->add_option("--T", dT);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "identity and property suite");
  add_common(verify, true);
  verify->add_option("--only", va.only, "run only the named checks")->delimiter(',');
  verify->add_option("--bound-C", va.bound_C);
  verify->add_option("--sieve-limit", va.sieve_limit);
  verify->add_option("--c1", va.c1);
  verify->add_option("--c2", va.c2);
  verify->add_option("--c3", va.c3);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    apply_config(sub, config_paths[sub]);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::usage);
  }

  try {
    if (*fetch) return cmd_fetch(c, slack);
    if (*validate) return cmd_validate(c, rvm_grid, slack);
    if (*fcurve) return cmd_fcurve(c, alphas, T, mode, band);
    if (*kernel) return cmd_kernel(c, kernel_name, x_max, x_step, bound_C);
    if (*simple) return cmd_simple_bound(c, sb_kernel);
    if (*pks) return cmd_pair_kernel_sum(c, pks_kernel, pks_T, pks_band, grid_cache);
    if (*expl) return cmd_explicit(c, ea);
    if (*density) return cmd_density(c, sigmas, dT);
    if (*verify) return cmd_verify(c, va);
  } catch (const Error& e) {
    std::cerr << "paircorr: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "paircorr: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::io);
  }
  return static_cast<int>(ErrorKind::usage);
}
