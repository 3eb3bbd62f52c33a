// Copyright 2026 The tpd Authors.
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

// Seed derivation shared by the randomized solvers and the generators.

#ifndef TPD_RNG_H_
#define TPD_RNG_H_

#include <cstdint>
#include <random>

namespace tpd {

uint64_t SplitMix64(uint64_t x);

// Independent stream seed for trial `trial` of a run seeded with `seed`.
uint64_t TrialSeed(uint64_t seed, uint64_t trial);

// Unbiased draw from [0, bound) that does not depend on the standard
// library's distribution implementation.
uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound);

// Bernoulli draw with probability p, also implementation independent.
bool Chance(std::mt19937_64& rng, double p);

}  // namespace tpd

#endif  // TPD_RNG_H_
