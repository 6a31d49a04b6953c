/* Copyright 2026 The seeood Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SEEOOD_RNG_HPP_
#define SEEOOD_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace seeood {

// Seeded pseudo-random stream with a fixed, portable algorithm.
//
// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
// standard. Everything layered on top is implemented here rather than with
// the <random> distributions, whose algorithms are implementation-defined:
//
//   uniform()        top 53 bits of one draw, scaled to [0, 1)
//   uniform_index(n) rejection sampling on the raw 64-bit draw
//   normal()         Marsaglia polar method; the second variate of each
//                    accepted pair is cached and returned by the next call
//
// Identical seeds therefore give identical streams on every IEEE-754
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::size_t uniform_index(std::size_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::optional<double> spare_normal_;
};

// splitmix64 finalizer; derives independent sub-stream seeds from one base.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace seeood

#endif  // SEEOOD_RNG_HPP_
