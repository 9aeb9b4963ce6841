//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_UTIL_TEXT_H_
#define MODOF_UTIL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modof {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a(const unsigned char *data, std::size_t n,
                              std::uint64_t h = kFnvOffset) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= data[i];
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = kFnvOffset) {
  return fnv1a(reinterpret_cast<const unsigned char *>(s.data()), s.size(),
               h);
}

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string> &parts, std::string_view sep);

/// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);
/// Fixed notation with `digits` digits after the point.
std::string format_fixed(double v, int digits);

bool parse_double(std::string_view s, double &out);
bool parse_int(std::string_view s, long long &out);

}  // namespace modof

#endif  // MODOF_UTIL_TEXT_H_
