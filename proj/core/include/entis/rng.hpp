// Copyright 2026 The entis Authors.
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

#ifndef ENTIS_RNG_HPP
#define ENTIS_RNG_HPP

#include <cstdint>
#include <limits>
#include <string_view>

namespace entis {

/// Counter-based, splittable random bit generator.
/**
 * Output n of a stream with key k is `mix(k + n * golden)`, the SplitMix64 finalizer applied to
 * a Weyl sequence. Streams are derived by hashing a parent key with a stream index or name, so
 * independent replicas and named sub-experiments never share state and can be rerun in
 * isolation. Satisfies the standard UniformRandomBitGenerator requirements.
 */
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ + (counter_++) * kGolden); }

  /// Child stream indexed by an integer; does not advance this stream.
  [[nodiscard]] Rng split(std::uint64_t stream) const noexcept;

  /// Child stream indexed by a name (FNV-1a hashed).
  [[nodiscard]] Rng split(std::string_view name) const noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  struct FromKey {};
  Rng(FromKey, std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_{0};
};

}  // namespace entis

#endif
