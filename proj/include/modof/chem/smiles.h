//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_SMILES_H_
#define MODOF_CHEM_SMILES_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "modof/chem/molecule.h"

namespace modof::chem {

enum class SmilesErrorKind {
  kSyntax,
  kUnbalancedParens,
  kUnclosedRing,
  kUnsupportedElement,
  kNotKekulizable,
  kValence,
};

class SmilesError: public ChemError {
public:
  SmilesError(SmilesErrorKind kind, std::size_t offset,
              const std::string &what)
      : ChemError(what + " at offset " + std::to_string(offset)),
        kind_(kind), offset_(offset) { }

  SmilesErrorKind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

private:
  SmilesErrorKind kind_;
  std::size_t offset_;
};

/// Parses the supported SMILES subset: organic-subset and bracket atoms,
/// charges, hydrogen counts, atom maps, branches, ring closures (digits and
/// %nn), explicit bond symbols and aromatic lowercase atoms. Isotopes and
/// stereo markers (@, /, \) are accepted and dropped.
Molecule parse_smiles(std::string_view text);

/// Canonical SMILES: the same string for every atom ordering of a graph.
/// Throws ChemError for molecules failing valence_check.
/// Like parse_smiles but accepts aromatic systems that only kekulize once
/// fused into a larger molecule (ring fragments cut from fused systems).
Molecule parse_fragment_smiles(std::string_view text);

std::string write_smiles(const Molecule &m);

/// Canonical SMILES without the valence precondition.
std::string write_fragment_smiles(const Molecule &m);

/// Writes atoms in the given DFS-start / neighbor priority order (lower rank
/// first) without canonicalization or validation.
std::string write_smiles_ranked(const Molecule &m,
                                const std::vector<int> &rank);

/// parse + write.
inline std::string canonical_smiles(std::string_view text) {
  return write_smiles(parse_smiles(text));
}

}  // namespace modof::chem

#endif  // MODOF_CHEM_SMILES_H_
