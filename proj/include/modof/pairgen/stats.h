//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PAIRGEN_STATS_H_
#define MODOF_PAIRGEN_STATS_H_

#include <map>
#include <string>
#include <vector>

#include "modof/pairgen/pairs.h"

namespace modof::pairgen {

struct FragmentStats {
  long long pairs = 0;
  /// Canonical fragment SMILES -> number of pairs.
  std::map<std::string, long long> removal;
  std::map<std::string, long long> attachment;
  long long pairs_with_removal = 0;
  long long pairs_with_attachment = 0;
  /// Mean atoms deleted (added) per pair that deletes (adds) anything.
  double mean_removal_atoms = 0.0;
  double mean_attachment_atoms = 0.0;
};

/// Fragment of `m` spanned by the given tree nodes (atoms shared with other
/// nodes included). Atoms without aromatic bonds inside the fragment are
/// written aliphatic.
std::string nodes_fragment_smiles(const chem::Molecule &m,
                                  const chem::JunctionTree &t,
                                  const std::vector<int> &nodes);

/// Atoms belonging only to the given nodes.
int exclusive_atom_count(const chem::JunctionTree &t, int num_atoms,
                         const std::vector<int> &nodes);

FragmentStats fragment_stats(const std::vector<TrainingPair> &pairs);

/// Most frequent first, ties by SMILES.
std::vector<std::pair<std::string, long long>>
top_fragments(const std::map<std::string, long long> &table, std::size_t k);

}  // namespace modof::pairgen

#endif  // MODOF_PAIRGEN_STATS_H_
