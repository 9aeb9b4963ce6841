//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/props/sascore.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "modof/chem/rings.h"
#include "modof/props/fingerprint.h"
#include "modof/util/text.h"

namespace modof::props {

SaTable SaTable::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open SA table: " + path);
  SaTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto s = trim(line);
    if (s.empty() || s[0] == '#')
      continue;
    const auto parts = split(s, '\t');
    double v = 0.0;
    if (parts.size() != 2 || !parse_double(trim(parts[1]), v))
      throw std::runtime_error("malformed SA table line "
                               + std::to_string(lineno));
    const auto key = trim(parts[0]);
    if (key == "default") {
      t.default_ = v;
      continue;
    }
    long long k = 0;
    std::uint64_t u = 0;
    const std::string ks(key);
    try {
      u = std::stoull(ks);
    } catch (const std::exception &) {
      if (!parse_int(key, k))
        throw std::runtime_error("malformed SA table key on line "
                                 + std::to_string(lineno));
      u = static_cast<std::uint64_t>(k);
    }
    t.scores_[u] = v;
  }
  return t;
}

double SaTable::score(std::uint64_t key) const {
  const auto it = scores_.find(key);
  return it == scores_.end() ? default_ : it->second;
}

int count_spiro_atoms(const chem::Molecule &m) {
  const auto rings = chem::sssr(m);
  std::set<int> spiro;
  for (std::size_t a = 0; a < rings.size(); ++a)
    for (std::size_t b = a + 1; b < rings.size(); ++b) {
      std::vector<int> shared;
      std::vector<int> ra = rings[a].atoms, rb = rings[b].atoms;
      std::sort(ra.begin(), ra.end());
      std::sort(rb.begin(), rb.end());
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                            std::back_inserter(shared));
      if (shared.size() == 1)
        spiro.insert(shared[0]);
    }
  return static_cast<int>(spiro.size());
}

int count_bridgehead_atoms(const chem::Molecule &m) {
  const auto rings = chem::sssr(m);
  std::set<int> heads;
  for (std::size_t a = 0; a < rings.size(); ++a)
    for (std::size_t b = a + 1; b < rings.size(); ++b) {
      std::vector<int> shared;
      std::set_intersection(rings[a].bonds.begin(), rings[a].bonds.end(),
                            rings[b].bonds.begin(), rings[b].bonds.end(),
                            std::back_inserter(shared));
      if (shared.size() < 2)
        continue;
      // Ends of the shared path: atoms touched by exactly one shared bond.
      std::map<int, int> touch;
      for (int k: shared) {
        ++touch[m.bond(k).begin];
        ++touch[m.bond(k).end];
      }
      for (const auto &[atom, n]: touch)
        if (n == 1)
          heads.insert(atom);
    }
  return static_cast<int>(heads.size());
}

SaBreakdown sa_breakdown(const chem::Molecule &m, const SaTable &table) {
  SaBreakdown r;
  const int n = m.num_atoms();
  if (n == 0)
    return r;
  int macro = 0;
  for (const auto &ring: chem::sssr(m))
    if (ring.size() > 8)
      ++macro;
  r.size = std::pow(n, 1.005) - n;
  r.stereo = 0.0;
  r.spiro = std::log10(count_spiro_atoms(m) + 1.0);
  r.bridge = std::log10(count_bridgehead_atoms(m) + 1.0);
  r.macrocycle = macro > 0 ? std::log10(2.0) : 0.0;

  if (table.empty()) {
    r.complexity_only = true;
    const double s = 1.0 + r.size + r.stereo + r.spiro + r.bridge
                     + r.macrocycle;
    r.score = std::clamp(s, 1.0, 10.0);
    return r;
  }

  std::map<std::uint64_t, int> counts;
  for (const auto &e: morgan_environments(m, 2))
    ++counts[e.invariant];
  double sum = 0.0;
  int nf = 0;
  for (const auto &[key, c]: counts) {
    sum += table.score(key) * c;
    nf += c;
  }
  r.fragment = nf > 0 ? sum / nf : 0.0;
  const int unique = static_cast<int>(counts.size());
  r.symmetry = n > unique ? std::log(static_cast<double>(n) / unique) * 0.5
                          : 0.0;
  double raw = r.fragment - r.size - r.stereo - r.spiro - r.bridge
               - r.macrocycle + r.symmetry;
  const double lo = -4.0, hi = 2.5;
  raw = 11.0 - (raw - lo + 1.0) / (hi - lo) * 9.0;
  if (raw > 8.0)
    raw = 8.0 + std::log(raw + 1.0 - 9.0);
  r.score = std::clamp(raw, 1.0, 10.0);
  return r;
}

}  // namespace modof::props
