//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PROPS_SASCORE_H_
#define MODOF_PROPS_SASCORE_H_

#include <cstdint>
#include <string>
#include <unordered_map>

#include "modof/chem/molecule.h"

namespace modof::props {

/// Fragment contributions keyed by unfolded environment invariant. File
/// format: "hash<TAB>score" per line; an optional "default<TAB>score" line
/// overrides the score of unseen environments (-4 otherwise).
class SaTable {
public:
  SaTable() = default;
  static SaTable load(const std::string &path);

  bool empty() const { return scores_.empty(); }
  void set(std::uint64_t key, double score) { scores_[key] = score; }
  void set_default(double s) { default_ = s; }
  double score(std::uint64_t key) const;

private:
  std::unordered_map<std::uint64_t, double> scores_;
  double default_ = -4.0;
};

struct SaBreakdown {
  double fragment = 0.0;   // mean fragment contribution (0 without table)
  double size = 0.0;
  double stereo = 0.0;
  double spiro = 0.0;
  double bridge = 0.0;
  double macrocycle = 0.0;
  double symmetry = 0.0;
  bool complexity_only = false;
  double score = 1.0;      // final value in [1, 10]
};

int count_spiro_atoms(const chem::Molecule &m);
int count_bridgehead_atoms(const chem::Molecule &m);

/// Ertl synthetic accessibility. With an empty table only the complexity
/// penalties are used: 1 + size + stereo + spiro + bridge + macrocycle,
/// clamped to [1, 10].
SaBreakdown sa_breakdown(const chem::Molecule &m, const SaTable &table = {});

inline double sa_score(const chem::Molecule &m, const SaTable &table = {}) {
  return sa_breakdown(m, table).score;
}

}  // namespace modof::props

#endif  // MODOF_PROPS_SASCORE_H_
