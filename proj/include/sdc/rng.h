//
// Copyright 2026 The sdcwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDC_RNG_H_
#define SDC_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace sdc {

// Seeded generator whose output is identical on every platform: the engine
// sequence is fixed by the standard and the distributions below are written
// out instead of using the implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform on {lo, ..., hi}; requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi) {
    uint64_t span = uint64_t(hi) - uint64_t(lo);
    if (span == ~uint64_t{0}) return int64_t(Next());
    uint64_t range = span + 1;
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % range);
    uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return int64_t(uint64_t(lo) + x % range);
  }

  // Uniform on [0, 1) with 53 random bits.
  double UniformDouble() { return double(Next() >> 11) * 0x1.0p-53; }

  double Normal(double mean, double sd) {
    double u1 = 1.0 - UniformDouble();  // (0, 1]
    double u2 = UniformDouble();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(6.283185307179586 * u2);
  }

  bool Bernoulli(double p) { return UniformDouble() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = size_t(UniformInt(0, int64_t(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive independent sub-seeds.
constexpr uint64_t MixSeed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sdc

#endif  // SDC_RNG_H_
