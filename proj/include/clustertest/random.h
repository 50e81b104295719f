// Copyright 2026 The Clustertest Authors.
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

#ifndef CLUSTERTEST_RANDOM_H_
#define CLUSTERTEST_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace clustertest {

// Stream tags. A stream is identified by (seed, tag, ...indices); two
// distinct tuples give statistically independent generators.
enum StreamTag : uint64_t {
  kTagTrial = 1,
  kTagSampler = 2,
  kTagNormWalk = 3,
  kTagGramWalk = 4,
  kTagGenerator = 5,
  kTagLabels = 6,
  kTagSession = 7,
  kTagPlayer = 8,
  kTagOracleVertex = 9,
  kTagBridge = 10,
};

uint64_t SplitMix64(uint64_t& state);

// Hashes (seed, parts...) into a 64-bit stream seed.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> parts);

// xoshiro256** with platform-independent bounded and real draws.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  Rng(uint64_t seed, std::initializer_list<uint64_t> parts)
      : Rng(DeriveSeed(seed, parts)) {}

  uint64_t Next();

  // Uniform on [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // Uniform on [0, 1) with 53 random bits.
  double UniformDouble();

  bool Bernoulli(double p) { return UniformDouble() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = UniformInt(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t s_[4];
};

}  // namespace clustertest

#endif  // CLUSTERTEST_RANDOM_H_
