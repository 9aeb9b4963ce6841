//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/cli/config.h"

#include <fstream>
#include <sstream>

#include "modof/util/text.h"

namespace modof::cli {

namespace {

int as_int(const std::string &key, const std::string &v) {
  long long x = 0;
  if (!parse_int(v, x) || x < INT32_MIN || x > INT32_MAX)
    throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
  return static_cast<int>(x);
}

double as_double(const std::string &key, const std::string &v) {
  double x = 0;
  if (!parse_double(v, x))
    throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return x;
}

}  // namespace

const std::vector<std::string> &Config::keys() {
  static const std::vector<std::string> k = {
    "hidden", "z_dim", "t_a", "t_n", "max_atoms", "beta_init", "beta_step",
    "beta_every", "beta_cap", "lr", "batch", "epochs", "max_children",
    "max_attachments", "delta", "k", "iters", "m", "b", "logp_mean",
    "logp_std", "sa_mean", "sa_std", "cycle_mean", "cycle_std", "seed",
    "threads",
  };
  return k;
}

void Config::set(const std::string &key, const std::string &v) {
  if (key == "hidden") hp.hidden = as_int(key, v);
  else if (key == "z_dim") hp.z_dim = as_int(key, v);
  else if (key == "t_a") hp.t_a = as_int(key, v);
  else if (key == "t_n") hp.t_n = as_int(key, v);
  else if (key == "max_atoms") {
    hp.max_atoms = as_int(key, v);
    plogp.max_atoms = hp.max_atoms;
  }
  else if (key == "beta_init") hp.beta_init = as_double(key, v);
  else if (key == "beta_step") hp.beta_step = as_double(key, v);
  else if (key == "beta_every") hp.beta_every = as_int(key, v);
  else if (key == "beta_cap") hp.beta_cap = as_double(key, v);
  else if (key == "lr") hp.lr = as_double(key, v);
  else if (key == "batch") hp.batch = as_int(key, v);
  else if (key == "epochs") hp.epochs = as_int(key, v);
  else if (key == "max_children") hp.max_children = as_int(key, v);
  else if (key == "max_attachments") hp.max_attachments = as_int(key, v);
  else if (key == "delta") pipe.delta = as_double(key, v);
  else if (key == "k") pipe.K = as_int(key, v);
  else if (key == "iters") pipe.max_iters = as_int(key, v);
  else if (key == "m") pipe.m = as_int(key, v);
  else if (key == "b") pipe.b = as_int(key, v);
  else if (key == "logp_mean") plogp.logp_mean = as_double(key, v);
  else if (key == "logp_std") plogp.logp_std = as_double(key, v);
  else if (key == "sa_mean") plogp.sa_mean = as_double(key, v);
  else if (key == "sa_std") plogp.sa_std = as_double(key, v);
  else if (key == "cycle_mean") plogp.cycle_mean = as_double(key, v);
  else if (key == "cycle_std") plogp.cycle_std = as_double(key, v);
  else if (key == "seed") {
    long long x = 0;
    if (!parse_int(v, x) || x < 0)
      throw ConfigError("'seed' expects a non-negative integer, got '" + v
                        + "'");
    seed = static_cast<std::uint64_t>(x);
  }
  else if (key == "threads") threads = as_int(key, v);
  else
    throw ConfigError("unknown configuration key '" + key + "'");
}

Config Config::parse(const std::string &text, Config base) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    const auto t = trim(line);
    if (t.empty())
      continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno)
                        + ": expected 'key = value'");
    const std::string key(trim(t.substr(0, eq)));
    const std::string value(trim(t.substr(eq + 1)));
    try {
      base.set(key, value);
    } catch (const ConfigError &e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

Config Config::load(const std::string &path, Config base) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str(), std::move(base));
  } catch (const ConfigError &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<std::string> Config::lines() const {
  const auto i = [](int v) { return std::to_string(v); };
  const auto d = [](double v) { return format_double(v); };
  const std::vector<std::string> values = {
    i(hp.hidden), i(hp.z_dim), i(hp.t_a), i(hp.t_n), i(hp.max_atoms),
    d(hp.beta_init), d(hp.beta_step), i(hp.beta_every), d(hp.beta_cap),
    d(hp.lr), i(hp.batch), i(hp.epochs), i(hp.max_children),
    i(hp.max_attachments), d(pipe.delta), i(pipe.K), i(pipe.max_iters),
    i(pipe.m), i(pipe.b), d(plogp.logp_mean), d(plogp.logp_std),
    d(plogp.sa_mean), d(plogp.sa_std), d(plogp.cycle_mean),
    d(plogp.cycle_std), std::to_string(seed), i(threads),
  };
  std::vector<std::string> out;
  for (std::size_t k = 0; k < keys().size(); ++k)
    out.push_back(keys()[k] + " = " + values[k]);
  return out;
}

}  // namespace modof::cli
