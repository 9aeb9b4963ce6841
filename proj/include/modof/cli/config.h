//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CLI_CONFIG_H_
#define MODOF_CLI_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "modof/net/model.h"
#include "modof/pipe/pipe.h"
#include "modof/props/plogp.h"

namespace modof::cli {

class ConfigError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Resolved run configuration: model hyperparameters, pipeline settings,
/// property normalization and run-level seed and thread count.
struct Config {
  net::HyperParams hp;
  pipe::PipeConfig pipe;
  props::PlogpConfig plogp;
  std::uint64_t seed = 0;
  int threads = 1;

  /// `key = value` lines; '#' starts a comment. Unknown keys and malformed
  /// values throw ConfigError with the line number.
  static Config parse(const std::string &text, Config base);
  static Config load(const std::string &path, Config base);

  /// Assigns one key. Throws ConfigError.
  void set(const std::string &key, const std::string &value);

  /// Every key with its resolved value, in a fixed order.
  std::vector<std::string> lines() const;
  static const std::vector<std::string> &keys();
};

}  // namespace modof::cli

#endif  // MODOF_CLI_CONFIG_H_
