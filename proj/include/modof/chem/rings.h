//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_RINGS_H_
#define MODOF_CHEM_RINGS_H_

#include <vector>

#include "modof/chem/molecule.h"

namespace modof::chem {

struct Ring {
  /// Atoms in cycle order, starting at the lowest index and continuing
  /// towards its lower-indexed ring neighbor.
  std::vector<int> atoms;
  /// Bond indices, sorted.
  std::vector<int> bonds;

  int size() const { return static_cast<int>(atoms.size()); }
};

/// Cyclomatic number |bonds| - |atoms| + |components|.
int cycle_rank(const Molecule &m);

/// Smallest set of smallest rings. Rings are sorted by size, then by their
/// sorted atom list.
std::vector<Ring> sssr(const Molecule &m);

/// Per-bond flag: true when the bond lies on some cycle.
std::vector<bool> ring_bond_flags(const Molecule &m);

/// Per-atom flag: true when the atom lies on some cycle.
std::vector<bool> ring_atom_flags(const Molecule &m);

}  // namespace modof::chem

#endif  // MODOF_CHEM_RINGS_H_
