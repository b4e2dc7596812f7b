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

// Pair sum F(x, T) for the first two zeros, exact and banded, next to the
// closed form 2 + 2 cos(g log x) 4 / (4 + g^2).

#include <cmath>
#include <cstdio>

#include "paircorr/pair_correlation.hpp"

int main() {
  using namespace paircorr;
  // Two ordinates, declared complete up to height 25.
  const ZeroTable table({{0.0, 14.134725}, {0.0, 21.022040}}, {}, 25.0);
  const double g = 21.022040 - 14.134725;
  for (double x : {1.0, 2.0, std::exp(std::numbers::pi / g), 10.0}) {
    const auto exact = f_exact(table, x, 25.0);
    const auto banded = f_banded(table, x, 25.0, 5.0);
    const double closed = 2.0 + 2.0 * std::cos(g * std::log(x)) * 4.0 / (4.0 + g * g);
    std::printf("x=%-10.6g exact=%.12f closed=%.12f banded=%.6f (bound %.3g)\n", x,
                exact.value.real(), closed, banded.value.real(), banded.truncation_bound);
  }
}
