//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_ISOMORPHISM_H_
#define MODOF_CHEM_ISOMORPHISM_H_

#include <functional>
#include <optional>
#include <vector>

#include "modof/chem/molecule.h"

namespace modof::chem {

using AtomCompat = std::function<bool(int a_atom, int b_atom)>;
/// Called for every complete mapping (a atom -> b atom); return true to stop.
using MappingVisitor = std::function<bool(const std::vector<int> &)>;

struct IsoOptions {
  bool compare_bond_orders = true;
  /// Search-node budget; 0 means unlimited.
  long long max_steps = 0;
};

/// Backtracking graph isomorphism over full atom bijections. Degrees,
/// adjacency and (optionally) bond orders must agree; `compat` filters atom
/// pairs. Returns true if the visitor stopped the search.
bool enumerate_isomorphisms(const Molecule &a, const Molecule &b,
                            const AtomCompat &compat,
                            const MappingVisitor &visit,
                            const IsoOptions &opts = {});

std::optional<std::vector<int>>
find_isomorphism(const Molecule &a, const Molecule &b, const AtomCompat &compat,
                 const IsoOptions &opts = {});

/// Element, charge and bond-order preserving isomorphism (aromatic flags
/// compared as well).
bool are_isomorphic(const Molecule &a, const Molecule &b);

}  // namespace modof::chem

#endif  // MODOF_CHEM_ISOMORPHISM_H_
