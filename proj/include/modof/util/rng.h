//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_UTIL_RNG_H_
#define MODOF_UTIL_RNG_H_

#include <cstdint>

namespace modof {

/// Counter-based splittable generator.
///
/// Output i of a stream with key k is `mix64(k + (i + 1) * kGamma)`, where
/// `mix64` is the SplitMix64 finalizer (constants 0xbf58476d1ce4e5b9 and
/// 0x94d049bb133111eb, shifts 30/27/31) and `kGamma = 0x9e3779b97f4a7c15`.
/// `split(j)` derives an independent child stream with key
/// `mix64(k ^ mix64(j + kSplitSalt))`. Everything is plain 64-bit integer
/// arithmetic, so streams are bit-identical on every platform.
class Rng {
public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSplitSalt = 0x632be59bd9b4e019ULL;

  explicit Rng(std::uint64_t seed = 0): key_(mix64(seed)) { }

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller; consumes two outputs per call.
  double normal();

  Rng split(std::uint64_t j) const {
    Rng child;
    child.key_ = mix64(key_ ^ mix64(j + kSplitSalt));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static Rng from_state(std::uint64_t key, std::uint64_t counter) {
    Rng r;
    r.key_ = key;
    r.counter_ = counter;
    return r;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace modof

#endif  // MODOF_UTIL_RNG_H_
