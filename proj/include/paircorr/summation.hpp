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
#include <thread>
#include <vector>

namespace paircorr {

/// Neumaier's variant of Kahan summation. Error-free transforms on each add
/// keep the running compensation, so the result is accurate to about one
/// ulp of the true sum regardless of the summand count.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  void add(const CompensatedComplexSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

struct ParallelOptions {
  unsigned threads = 0;          // 0 = hardware concurrency
  std::size_t chunk_size = 256;  // outer indices per chunk; fixes the reduction tree

  unsigned resolved_threads() const {
    unsigned n = threads ? threads : std::thread::hardware_concurrency();
    return std::max(1u, n);
  }
};

/// Runs `body(begin, end, acc)` over fixed-size chunks of [0, n) and folds
/// the per-chunk accumulators in ascending chunk order. The chunk partition
/// depends only on `chunk_size`, so results are bit-identical for any thread
/// count.
template <class Acc, class Body>
Acc chunked_reduce(std::size_t n, const ParallelOptions& opts, Body&& body) {
  const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_size);
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<Acc> partial(n_chunks);

  auto run_range = [&](std::size_t first_chunk, std::size_t stride) {
    for (std::size_t c = first_chunk; c < n_chunks; c += stride) {
      const std::size_t lo = c * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      body(lo, hi, partial[c]);
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(opts.resolved_threads(), n_chunks));
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
    for (auto& t : pool) t.join();
  }

  Acc total{};
  for (const auto& p : partial) total.add(p);
  return total;
}

}  // namespace paircorr
