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

#include "paircorr/errors.hpp"

namespace paircorr {

/// Korobov-Vinogradov zero-free region shape. The constant is not known in
/// closed form; the default is a placeholder for plotting only.
struct ZeroFreeRegion {
  double c = 1.0 / 60.0;
  double t_min = 3.0;
};

/// min(1/2, c / ((log t)^{2/3} (log log t)^{1/3})).
inline double eta_kv(const ZeroFreeRegion& region, double t) {
  if (!(region.c > 0.0)) throw DomainError("eta_kv: c must be positive");
  if (!(t >= 3.0) || t < region.t_min) throw DomainError("eta_kv: t below admissible range");
  const double lt = std::log(t);
  const double eta = region.c / (std::cbrt(lt * lt) * std::cbrt(std::log(lt)));
  return std::fmin(0.5, eta);
}

/// T^{2(1 - sigma)}, the comparison curve for zero-density counts.
inline double density_hypothesis_curve(double sigma, double T) {
  if (!(sigma >= 0.5 && sigma <= 1.0)) throw DomainError("density curve: sigma must be in [1/2, 1]");
  if (!(T >= 3.0)) throw DomainError("density curve: T must be >= 3");
  return std::pow(T, 2.0 * (1.0 - sigma));
}

}  // namespace paircorr
