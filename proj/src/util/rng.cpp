//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/util/rng.h"

#include <cmath>
#include <numbers>

namespace modof {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 < 0x1.0p-60)
    u1 = 0x1.0p-60;
  return std::sqrt(-2.0 * std::log(u1))
         * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace modof
