// Copyright 2026 The mcvqa Authors
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

#include "mcvqa/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mcvqa {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  // index -> odd-multiplier offset is injective mod 2^64 and mix64 is a
  // bijection, so collisions across indices are impossible.
  return mix64(master_seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_int: bound must be nonzero");
  }
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t rem = (std::uint64_t{0} - bound) % bound;  // 2^64 mod bound
  const std::uint64_t limit = ~std::uint64_t{0} - rem;
  std::uint64_t r;
  do {
    r = next_u64();
  } while (r > limit);
  return r % bound;
}

}  // namespace mcvqa
