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

#include "frr/random_stream.h"

namespace frr {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(SplitMix64(seed)),
                    static_cast<std::uint32_t>(SplitMix64(seed) >> 32),
                    static_cast<std::uint32_t>(SplitMix64(seed ^ 1)),
                    static_cast<std::uint32_t>(SplitMix64(seed ^ 1) >> 32)};
  engine_.seed(seq);
}

std::uint64_t RandomStream::EntropySeed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) | device();
}

RandomStream RandomStream::FromEntropy() { return RandomStream(EntropySeed()); }

RandomStream RandomStream::Split(std::uint64_t stream_id) const {
  return RandomStream(SplitMix64(seed_ ^ SplitMix64(stream_id)));
}

double RandomStream::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace frr
