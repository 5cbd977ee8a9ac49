// Copyright 2026 The FRR Toolkit Authors
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

#ifndef FRR_RANDOM_STREAM_H_
#define FRR_RANDOM_STREAM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace frr {

// Seedable, splittable pseudo-random stream (64-bit Mersenne Twister seeded
// through SplitMix64). Not thread-safe: one stream per owner.
class RandomStream {
 public:
  static constexpr std::string_view kGeneratorName = "mt19937_64+splitmix64";

  explicit RandomStream(std::uint64_t seed);

  // Seeds from std::random_device.
  static RandomStream FromEntropy();
  static std::uint64_t EntropySeed();

  // Child stream derived only from this stream's seed and `stream_id`, so
  // splitting is independent of how much of the parent was consumed.
  RandomStream Split(std::uint64_t stream_id) const;

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();

  std::uint64_t NextU64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace frr

#endif  // FRR_RANDOM_STREAM_H_
