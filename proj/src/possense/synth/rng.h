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

#ifndef POSSENSE_SYNTH_RNG_H_
#define POSSENSE_SYNTH_RNG_H_

#include <cstdint>
#include <random>

namespace possense::synth {

// 64-bit Mersenne Twister (MT19937-64) with distribution code written out
// here, because library distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n);
  // Box-Muller; consumes two uniforms per call.
  double Normal();
  double Normal(double mean, double sigma) { return mean + sigma * Normal(); }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Knuth's product method; fine for the small rates used here.
  int Poisson(double lambda);

 private:
  std::mt19937_64 engine_;
};

}  // namespace possense::synth

#endif  // POSSENSE_SYNTH_RNG_H_
