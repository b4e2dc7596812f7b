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

// Prints the simple-zero constants for both built-in kernels and a few
// values of K on and off the real axis.

#include <complex>
#include <cstdio>

#include "paircorr/simple_zeros.hpp"

int main() {
  using namespace paircorr;
  for (const auto& k : {fejer_kernel(), montgomery_taylor_kernel()}) {
    const auto b = simple_zero_bound(k);
    std::printf("%-18s j(0)=%.10f moment=%.10f piK0=%.10f bound=%.10f\n", k.name().c_str(),
                b.khat0, b.alpha_moment, b.piK0, b.bound());
    for (std::complex<double> z : {std::complex<double>(0, 0), {5, 0}, {5, 0.9}, {30, -0.45}}) {
      const auto v = k_of_z(k, z, 1e-12);
      std::printf("  K(%g%+gi) = %.12f%+.12fi\n", z.real(), z.imag(), v.value.real(),
                  v.value.imag());
    }
  }
}
