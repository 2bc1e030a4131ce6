// Copyright 2026 The kgnews Authors.
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


#ifndef KGNEWS_RANDOM_H_
#define KGNEWS_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace kgnews {

// mt19937_64 output is fixed by the standard, unlike the distributions in
// <random>, so everything that must be byte-reproducible across toolchains
// draws through the helpers below.
using Rng = std::mt19937_64;

// Derives the seed of a named substream from the global seed. Changing one
// stage's consumption of random numbers never perturbs another stage.
uint64_t SubstreamSeed(uint64_t global_seed, std::string_view stage);

// Uniform integer in [0, n) by rejection sampling. n must be positive.
size_t UniformIndex(Rng &rng, size_t n);

// Uniform double in [lo, hi) built from the top 53 bits of one draw.
double UniformReal(Rng &rng, double lo, double hi);

}  // namespace kgnews

#endif  // KGNEWS_RANDOM_H_
