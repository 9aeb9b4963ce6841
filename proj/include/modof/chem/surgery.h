//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_SURGERY_H_
#define MODOF_CHEM_SURGERY_H_

#include <deque>
#include <optional>
#include <vector>

#include "modof/chem/junction_tree.h"
#include "modof/chem/molecule.h"
#include "modof/chem/vocabulary.h"

namespace modof::chem {

/// One atom, or an ordered pair of bonded atoms. On the parent side the
/// indices are molecule atoms; on the child side, template atoms.
struct AttachPoint {
  std::vector<int> atoms;

  bool operator==(const AttachPoint &) const = default;
};

struct IntermediateMol {
  Molecule mol;
  JunctionTree tree;
  std::deque<int> frontier;
};

/// Removes whole branches hanging off `n_d`. Atoms used only by removed
/// nodes are deleted; surviving nodes keep their relative order. The
/// returned frontier holds the new index of `n_d`. Throws ChemError when a
/// removal node is `n_d`, lies outside n_d's component, or would leave a
/// retained node cut off from n_d.
IntermediateMol remove_subtrees(const Molecule &m, const JunctionTree &t,
                                int n_d, const std::vector<int> &removal,
                                int *new_n_d = nullptr,
                                std::vector<int> *node_old_to_new = nullptr);

/// Fuses a copy of vocabulary template `child_type` onto node `parent`,
/// identifying child_pt.atoms[i] with parent_pt.atoms[i]. Returns the new
/// node index. Throws ChemError (leaving `im` untouched) when the fusion is
/// inconsistent or breaks valence rules.
int attach_node(IntermediateMol &im, const NodeVocabulary &vocab, int parent,
                int child_type, const AttachPoint &parent_pt,
                const AttachPoint &child_pt);

/// Non-throwing variant; returns the updated copy or nullopt.
std::optional<IntermediateMol>
try_attach(const IntermediateMol &im, const NodeVocabulary &vocab, int parent,
           int child_type, const AttachPoint &parent_pt,
           const AttachPoint &child_pt);

struct AttachmentCandidates {
  std::vector<AttachPoint> parent;
  /// children[i] lists the legal child points for parent[i].
  std::vector<std::vector<AttachPoint>> children;

  bool empty() const { return parent.empty(); }
};

/// Legal, symmetry-reduced attachment configurations. Parent atoms come
/// first (ascending), then parent bonds; bonds are offered only when both
/// parent node and child template are rings. Every listed pair attaches
/// successfully.
AttachmentCandidates
enumerate_attachment_candidates(const IntermediateMol &im,
                                const NodeVocabulary &vocab, int parent,
                                int child_type);

/// Atom count after attaching `child_type` through a point of `arity`
/// atoms.
inline int atoms_after_attach(const IntermediateMol &im,
                              const NodeVocabulary &vocab, int child_type,
                              int arity) {
  return im.mol.num_atoms() + vocab.at(child_type).mol.num_atoms() - arity;
}

}  // namespace modof::chem

#endif  // MODOF_CHEM_SURGERY_H_
