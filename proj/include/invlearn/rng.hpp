// Copyright 2026 The invlearn Authors.
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

#pragma once

#include <cstdint>
#include <random>

namespace invlearn {

/// splitmix64 finaliser. Used only to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purpose tags keep the draws of different consumers in disjoint streams.
enum class StreamTag : std::uint64_t {
  Distribution = 1,
  Demand = 2,
  Policy = 16,  // Policy + kind index
  Test = 64,
};

/// A single-owner uniform stream over std::mt19937_64.
///
/// uniform() returns the top 53 bits of one engine output scaled by 2^-53, so
/// every draw lies in [0, 1) and the sequence is identical on every platform.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t bits() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the stream for cell (k, l) and purpose `tag`:
///   mix64(master ^ mix64(tag ^ mix64(k ^ mix64(l))))
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t k, std::uint64_t l,
                                    std::uint64_t tag) noexcept {
  return mix64(master ^ mix64(tag ^ mix64(k ^ mix64(l))));
}

inline Stream derive_stream(std::uint64_t master, std::uint64_t k, std::uint64_t l,
                            StreamTag tag, std::uint64_t offset = 0) {
  return Stream(stream_seed(master, k, l, static_cast<std::uint64_t>(tag) + offset));
}

}  // namespace invlearn
