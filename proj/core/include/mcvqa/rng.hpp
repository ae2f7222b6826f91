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

#ifndef MCVQA_RNG_HPP_
#define MCVQA_RNG_HPP_

#include <cstdint>
#include <random>

namespace mcvqa {

/// SplitMix64 finalizer. Bijective on 64-bit integers.
std::uint64_t mix64(std::uint64_t x);

/// Seed for item `index` of a seeded sweep: mix64 applied to the master seed
/// offset by an odd multiple of the index. For a fixed master seed, distinct
/// indices always yield distinct seeds.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Seeded random source with pinned sampling algorithms, so identical seeds
/// reproduce identical streams on any platform or standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits of precision.
  double uniform();

  /// Standard normal deviate (Marsaglia polar method).
  double normal();

  /// Unbiased uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mcvqa

#endif  // MCVQA_RNG_HPP_
