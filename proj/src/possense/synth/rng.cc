// Copyright 2026 The possense Authors.
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

#include "possense/synth/rng.h"

#include <cmath>
#include <numbers>

#include "possense/model/errors.h"

namespace possense::synth {

std::uint64_t Rng::Below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % n;
}

double Rng::Normal() {
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::Poisson(double lambda) {
  if (!(lambda >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Poisson rate must be >= 0");
  }
  if (lambda == 0.0) return 0;
  if (lambda > 500.0) {
    throw Error(ErrorCode::kInvalidArgument, "Poisson rate too large");
  }
  const double limit = std::exp(-lambda);
  int k = 0;
  double p = Uniform();
  while (p > limit) {
    ++k;
    p *= Uniform();
  }
  return k;
}

}  // namespace possense::synth
