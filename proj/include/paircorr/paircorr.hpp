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

#include "paircorr/errors.hpp"
#include "paircorr/explicit_formula.hpp"
#include "paircorr/kernels.hpp"
#include "paircorr/pair_correlation.hpp"
#include "paircorr/hashing.hpp"
#include "paircorr/quadrature.hpp"
#include "paircorr/remote_table.hpp"
#include "paircorr/simple_zeros.hpp"
#include "paircorr/summation.hpp"
#include "paircorr/theory.hpp"
#include "paircorr/zero_table.hpp"
