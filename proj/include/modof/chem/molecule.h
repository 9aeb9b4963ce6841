//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_MOLECULE_H_
#define MODOF_CHEM_MOLECULE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modof/chem/element.h"

namespace modof::chem {

class ChemError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

inline constexpr int kNumBondOrders = 4;

/// Contribution of a bond to the sigma+pi valence bookkeeping. Aromatic bonds
/// count one; the extra pi electron of an aromatic atom is tracked on the
/// atom itself (Atom::pi).
inline int valence_contribution(BondOrder o) {
  return o == BondOrder::kAromatic ? 1 : static_cast<int>(o);
}

struct Atom {
  Element element = Element::kC;
  int charge = 0;
  bool aromatic = false;
  /// Aromatic atom that takes part in a double bond of the Kekule form.
  bool pi = false;
  /// Hydrogen count pinned by the input; -1 means derived from valence.
  int fixed_h = -1;
  int atom_map = 0;
};

struct Bond {
  int begin;
  int end;
  BondOrder order;

  int other(int a) const { return a == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Heavy-atom molecular graph. Hydrogen counts are derived from the valence
/// model (Molecule::hydrogens), so graph surgery never has to touch them.
class Molecule {
public:
  Molecule() = default;

  int add_atom(const Atom &atom);
  /// Throws ChemError on self-loops, duplicates or out-of-range indices.
  int add_bond(int a, int b, BondOrder order);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &mutable_atom(int i) { return atoms_[i]; }
  const Bond &bond(int k) const { return bonds_[k]; }
  void set_bond_order(int k, BondOrder order) { bonds_[k].order = order; }

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(int i) const { return adj_[i]; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }

  /// Bond index between a and b, or -1.
  int find_bond(int a, int b) const;

  /// Sum of bond valence contributions plus the atom's pi electron.
  int bond_valence(int i) const;
  /// Total hydrogens on atom i (fixed or derived).
  int hydrogens(int i) const;
  int total_hydrogens() const;

  /// Copy without the listed atoms. `old_to_new` receives -1 for removed
  /// atoms.
  Molecule without_atoms(const std::vector<bool> &remove,
                         std::vector<int> *old_to_new = nullptr) const;

  /// Copy keeping only `keep` atoms (and bonds among them) in the given
  /// order.
  Molecule subgraph(std::span<const int> keep,
                    std::vector<int> *old_to_new = nullptr) const;

  /// Connected-component id per atom; ids are assigned in order of the
  /// lowest atom index of each component.
  std::vector<int> components(int *count = nullptr) const;

  /// Renumber atoms: new index of old atom i is perm[i].
  Molecule permuted(std::span<const int> perm) const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

struct Violation {
  int atom;
  std::string message;
};

/// Empty iff every atom is within its allowed valence, aromatic flags are
/// consistent, and every aromatic system has a Kekule structure.
std::vector<Violation> valence_check(const Molecule &m);

/// Kekule bond orders (1, 2 or 3) per bond; aromatic bonds receive 1 or 2.
/// Returns false when the pi atoms admit no perfect matching. `unmatched`
/// receives an offending atom on failure.
bool kekulize(const Molecule &m, std::vector<int> &orders,
              int *unmatched = nullptr);

/// Default pi assignment for an aromatic atom whose neighbors are known:
/// pi is set when the sigma valence is not allowed but one more unit is.
bool infer_pi(const Molecule &m, int i, int explicit_h);

}  // namespace modof::chem

#endif  // MODOF_CHEM_MOLECULE_H_
