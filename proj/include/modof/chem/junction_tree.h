//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_JUNCTION_TREE_H_
#define MODOF_CHEM_JUNCTION_TREE_H_

#include <string>
#include <utility>
#include <vector>

#include "modof/chem/molecule.h"

namespace modof::chem {

class NodeVocabulary;

enum class NodeKind { kRing, kBond, kAtom };

struct TreeNode {
  std::vector<int> atoms;  // sorted
  std::vector<int> bonds;  // sorted
  NodeKind kind = NodeKind::kBond;
  int type_id = -1;
};

struct JunctionTree {
  std::vector<TreeNode> nodes;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<std::vector<int>> adj;       // sorted neighbor lists

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  const std::vector<int> &neighbors(int n) const { return adj[n]; }

  /// Atoms shared by two nodes, sorted.
  std::vector<int> shared_atoms(int u, int v) const;

  /// Node ids containing each atom.
  std::vector<std::vector<int>> atom_nodes(int num_atoms) const;

  /// Nodes reachable from `start` without passing through `blocked`
  /// (blocked itself excluded).
  std::vector<int> branch(int start, int blocked) const;

  void add_edge(int u, int v);
  void rebuild_adjacency();
};

/// Unlabeled decomposition: SSSR rings (merged when they share three or
/// more atoms), bonds outside rings, and a single-atom node for each atom
/// covered by neither. Nodes are ordered by their sorted atom lists.
/// Cycles in the atom-sharing graph are cut by dropping, repeatedly, the
/// edge with the fewest shared atoms (ties: lowest node pair) whose removal
/// keeps its endpoints connected.
JunctionTree decompose(const Molecule &m);

/// Decomposition with every node labeled by its vocabulary type. Throws
/// VocabularyMiss for unseen fragments.
JunctionTree junction_tree(const Molecule &m, const NodeVocabulary &vocab);

/// Fragment graph of one node. Ring nodes keep aromaticity; bond and atom
/// nodes are written in aliphatic form. Charges are kept, atom maps and
/// pinned hydrogen counts are dropped. `atom_order` receives the molecule
/// atom index of each fragment atom.
Molecule node_fragment(const Molecule &m, const TreeNode &node,
                       std::vector<int> *atom_order = nullptr);

/// Canonical SMILES of node_fragment.
std::string node_descriptor(const Molecule &m, const TreeNode &node);

}  // namespace modof::chem

#endif  // MODOF_CHEM_JUNCTION_TREE_H_
