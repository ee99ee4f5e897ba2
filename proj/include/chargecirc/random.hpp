// Copyright 2026 The chargecirc Authors
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

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace chargecirc {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Folds an ordered list of words into one 64-bit key.
constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t w : words) {
        h = mix64(h ^ mix64(w + 0x9e3779b97f4a7c15ULL));
    }
    return h;
}

/**
 * Counter-based random stream.
 *
 * The i-th draw is a pure function of (key, i), so any stream can be
 * reconstructed from its key alone. Gates are addressed as
 * key = derive_key({seed, layer, bond}), which lets two circuits that share a
 * seed see identical gates regardless of the order in which they are built.
 *
 * Normal variates use Box-Muller on our own uniforms; std distributions are
 * avoided because their output is implementation-defined.
 */
class CounterStream {
  public:
    explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

    constexpr std::uint64_t next_u64() noexcept {
        return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on the open interval (0, 1), 53 random bits.
    constexpr double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double standard_normal() noexcept;

    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    std::complex<double> complex_normal() noexcept;

    [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] constexpr std::uint64_t position() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace chargecirc
