// Copyright 2026 The dprank Authors
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

#ifndef DPRANK_RNG_H_
#define DPRANK_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dprank {

// Every stochastic routine takes a caller-owned generator of this type.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: the seed for (base, k0, k1, ...) is
// Mix64(...Mix64(Mix64(base) ^ k0)... ^ kn). Replicate r of grid cell c uses
// DeriveSeed(base_seed, {c, r}), so streams do not depend on execution order.
constexpr std::uint64_t DeriveSeed(std::uint64_t base,
                                   std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = Mix64(base);
  for (std::uint64_t k : keys) s = Mix64(s ^ k);
  return s;
}

inline Rng MakeRng(std::uint64_t base,
                   std::initializer_list<std::uint64_t> keys = {}) {
  return Rng(DeriveSeed(base, keys));
}

}  // namespace dprank

#endif  // DPRANK_RNG_H_
