// Copyright 2026 The phontypo Authors.
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

#ifndef PHONTYPO_RNG_H_
#define PHONTYPO_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace phontypo {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order-sensitive key builder for independent random streams: every distinct
// (seed, part, part, ...) tuple yields its own generator.
class StreamKey {
 public:
  explicit StreamKey(std::uint64_t seed) : state_(SplitMix64(seed)) {}

  StreamKey& Add(std::uint64_t v) {
    state_ = SplitMix64(state_ ^ SplitMix64(v + 0x632BE59BD9B4E019ULL));
    return *this;
  }
  StreamKey& Add(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return Add(h ^ s.size());
  }

  std::uint64_t value() const { return state_; }
  std::mt19937_64 Engine() const { return std::mt19937_64(state_); }

 private:
  std::uint64_t state_;
};

}  // namespace phontypo

#endif  // PHONTYPO_RNG_H_
