//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_CANON_H_
#define MODOF_CHEM_CANON_H_

#include <span>
#include <string>
#include <vector>

#include "modof/chem/molecule.h"

namespace modof::chem {

/// Per-atom symmetry class from iterated neighborhood refinement, without
/// tie breaking. Atoms related by an automorphism always share a class.
/// Class ids are dense and ordered by invariant, so they are independent of
/// the input atom order.
std::vector<int> symmetry_classes(const Molecule &m);

/// Same, with an extra per-atom label folded into the initial coloring.
std::vector<int> symmetry_classes(const Molecule &m,
                                  std::span<const int> extra);

/// Refines an initial coloring until stable; returns dense ranks.
std::vector<int> refine_ranks(const Molecule &m, std::vector<int> ranks);

struct CanonicalForm {
  std::vector<int> rank;  // discrete; rank[i] is atom i's canonical position
  std::string smiles;
};

/// Canonical atom ranking. Ties left after refinement are broken by trying
/// every member of the first tied class and keeping the ordering whose SMILES
/// is lexicographically smallest; after `max_leaves` complete orderings the
/// search only follows the first member.
CanonicalForm canonicalize(const Molecule &m, int max_leaves = 256);

}  // namespace modof::chem

#endif  // MODOF_CHEM_CANON_H_
