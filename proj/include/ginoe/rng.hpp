// Copyright 2026 The ginoe-clt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Counter-based random numbers. Every draw is a pure function of
// (key, counter), so results never depend on thread scheduling.

#ifndef GINOE_RNG_HPP
#define GINOE_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ginoe::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
inline Counter philox4x32(Counter ctr, Key key) noexcept {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

// SplitMix64 finalizer; used to derive per-sample seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x632BE59BD9B4E019ull));
}

// Uniform in (0, 1) on a 52-bit lattice offset by half a step; 53 bits
// would round the top value up to 1.
constexpr double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

// Stream of draws addressed by a 64-bit key and a two-word position.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter block(std::uint64_t a, std::uint64_t b) const noexcept {
    return philox4x32({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)},
                      key_);
  }

  std::array<double, 2> uniforms(std::uint64_t a, std::uint64_t b) const noexcept {
    const Counter c = block(a, b);
    return {to_open_unit(c[0], c[1]), to_open_unit(c[2], c[3])};
  }

  // Box-Muller pair of independent standard normals.
  std::array<double, 2> normals(std::uint64_t a, std::uint64_t b) const noexcept {
    const auto u = uniforms(a, b);
    const double r = std::sqrt(-2.0 * std::log(u[0]));
    const double t = 2.0 * std::numbers::pi * u[1];
    return {r * std::cos(t), r * std::sin(t)};
  }

  double normal(std::uint64_t a, std::uint64_t b) const noexcept { return normals(a, b)[0]; }

  // Complex Gaussian with independent N(0, sigma^2) real and imaginary parts.
  std::complex<double> complex_normal(std::uint64_t a, std::uint64_t b, double sigma) const noexcept {
    const auto g = normals(a, b);
    return {sigma * g[0], sigma * g[1]};
  }

 private:
  Key key_;
};

}  // namespace ginoe::rng

#endif  // GINOE_RNG_HPP
