//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PROPS_CRIPPEN_H_
#define MODOF_PROPS_CRIPPEN_H_

#include <string>
#include <vector>

#include "modof/chem/molecule.h"

namespace modof::props {

class CrippenError: public chem::ChemError {
public:
  CrippenError(int atom, const std::string &what)
      : chem::ChemError(what + " (atom " + std::to_string(atom) + ")"),
        atom_(atom) { }
  int atom() const { return atom_; }

private:
  int atom_;
};

struct CrippenAtom {
  std::string type;        // heavy-atom class, e.g. "C18"
  double contribution;     // heavy atom alone
  std::string h_type;      // class of its hydrogens, empty if none
  double h_contribution;   // per hydrogen
  int hydrogens;
};

/// Wildman-Crippen atom classes, first match in table order.
std::vector<CrippenAtom> crippen_atom_types(const chem::Molecule &m);

/// Sum of heavy-atom and hydrogen contributions.
double crippen_logp(const chem::Molecule &m);

}  // namespace modof::props

#endif  // MODOF_PROPS_CRIPPEN_H_
