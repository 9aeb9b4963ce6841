//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/props/plogp.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "modof/chem/rings.h"
#include "modof/props/crippen.h"
#include "modof/util/text.h"

namespace modof::props {

PlogpConfig PlogpConfig::parse(const std::string &text) {
  PlogpConfig c;
  const std::map<std::string, double *> reals = {
    { "logp_mean", &c.logp_mean },   { "logp_std", &c.logp_std },
    { "sa_mean", &c.sa_mean },       { "sa_std", &c.sa_std },
    { "cycle_mean", &c.cycle_mean }, { "cycle_std", &c.cycle_std },
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty())
      continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("plogp config line "
                                  + std::to_string(lineno)
                                  + ": expected key = value");
    const std::string key(trim(body.substr(0, eq)));
    const auto val = trim(body.substr(eq + 1));
    if (key == "max_atoms") {
      long long v = 0;
      if (!parse_int(val, v) || v <= 0)
        throw std::invalid_argument("plogp config: bad max_atoms");
      c.max_atoms = static_cast<int>(v);
      continue;
    }
    const auto it = reals.find(key);
    if (it == reals.end())
      throw std::invalid_argument("plogp config: unknown key '" + key + "'");
    if (!parse_double(val, *it->second))
      throw std::invalid_argument("plogp config: bad value for " + key);
  }
  c.validate();
  return c;
}

PlogpConfig PlogpConfig::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open plogp config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string PlogpConfig::to_string() const {
  std::string s;
  s += "logp_mean = " + format_double(logp_mean) + "\n";
  s += "logp_std = " + format_double(logp_std) + "\n";
  s += "sa_mean = " + format_double(sa_mean) + "\n";
  s += "sa_std = " + format_double(sa_std) + "\n";
  s += "cycle_mean = " + format_double(cycle_mean) + "\n";
  s += "cycle_std = " + format_double(cycle_std) + "\n";
  s += "max_atoms = " + std::to_string(max_atoms) + "\n";
  return s;
}

void PlogpConfig::save(const std::string &path) const {
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("cannot write plogp config: " + path);
  out << to_string();
}

void PlogpConfig::validate() const {
  if (!(logp_std > 0) || !(sa_std > 0) || !(cycle_std > 0))
    throw std::invalid_argument("plogp config: every std must be positive");
}

double cycle_score(const chem::Molecule &m) {
  int largest = 0;
  for (const auto &r: chem::sssr(m))
    largest = std::max(largest, r.size());
  return largest > 6 ? -static_cast<double>(largest - 6) : 0.0;
}

PlogpTerms plogp_terms(const chem::Molecule &m, const PlogpConfig &cfg,
                       const SaTable &table) {
  PlogpTerms t;
  t.logp = crippen_logp(m);
  t.neg_sa = -sa_score(m, table);
  t.cycle = cycle_score(m);
  t.total = (t.logp - cfg.logp_mean) / cfg.logp_std
            + (t.neg_sa - cfg.sa_mean) / cfg.sa_std
            + (t.cycle - cfg.cycle_mean) / cfg.cycle_std;
  return t;
}

PlogpConfig calibrate(std::span<const chem::Molecule> mols,
                      const SaTable &table, const PlogpConfig &base,
                      std::vector<std::string> *fallbacks) {
  PlogpConfig c = base;
  const std::size_t n = mols.size();
  if (n == 0)
    return c;
  std::vector<double> l(n), s(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    l[i] = crippen_logp(mols[i]);
    s[i] = -sa_score(mols[i], table);
    y[i] = cycle_score(mols[i]);
  }
  auto stats = [n, fallbacks](const char *name, const std::vector<double> &v,
                              double &mean, double &sd) {
    double sum = 0.0;
    for (double x: v)
      sum += x;
    mean = sum / n;
    double var = 0.0;
    for (double x: v)
      var += (x - mean) * (x - mean);
    sd = std::sqrt(var / n);
    if (!(sd > 0)) {
      sd = 1.0;
      if (fallbacks)
        fallbacks->push_back(name);
    }
  };
  stats("logp", l, c.logp_mean, c.logp_std);
  stats("sa", s, c.sa_mean, c.sa_std);
  stats("cycle", y, c.cycle_mean, c.cycle_std);
  return c;
}

double LogpScorer::score(const chem::Molecule &m) const {
  return crippen_logp(m);
}

}  // namespace modof::props
