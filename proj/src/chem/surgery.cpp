//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/surgery.h"

#include <algorithm>
#include <set>

#include "modof/chem/canon.h"

namespace modof::chem {
namespace {

bool kekulizable(const Molecule &m) {
  std::vector<int> orders;
  return kekulize(m, orders);
}

// valence_check without the kekulization step.
bool local_valence_ok(const Molecule &m) {
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    const int maxv = max_valence(a.element, a.charge);
    const int v = m.bond_valence(i) + (a.fixed_h >= 0 ? a.fixed_h : 0);
    if (maxv < 0 || v > maxv)
      return false;
    bool has_aromatic = false;
    for (const auto &nb: m.neighbors(i)) {
      if (m.bond(nb.bond).order == BondOrder::kAromatic) {
        has_aromatic = true;
        if (!a.aromatic || !m.atom(nb.atom).aromatic)
          return false;
      }
    }
    if (a.pi && !has_aromatic)
      return false;
  }
  return true;
}

bool contains(const std::vector<int> &sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

IntermediateMol remove_subtrees(const Molecule &m, const JunctionTree &t,
                                int n_d, const std::vector<int> &removal,
                                int *new_n_d,
                                std::vector<int> *node_old_to_new) {
  const int nn = t.num_nodes();
  if (n_d < 0 || n_d >= nn)
    throw ChemError("disconnection node out of range");
  std::vector<bool> removed(nn, false);
  for (int u: removal) {
    if (u < 0 || u >= nn)
      throw ChemError("removal node out of range");
    if (u == n_d)
      throw ChemError("disconnection node cannot be removed");
    removed[u] = true;
  }
  // Orient the tree away from n_d; every removed node's subtree must be
  // removed as well, and removed nodes must be reachable from n_d.
  std::vector<int> parent(nn, -2);
  std::vector<int> order{ n_d };
  parent[n_d] = -1;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (int w: t.neighbors(order[h]))
      if (parent[w] == -2) {
        parent[w] = order[h];
        order.push_back(w);
      }
  for (int u: removal)
    if (parent[u] == -2)
      throw ChemError("removal node is not connected to the disconnection "
                      "site");
  for (int u: order)
    if (u != n_d && !removed[u] && parent[u] >= 0 && removed[parent[u]])
      throw ChemError("removal would disconnect a retained fragment from "
                      "the disconnection site");

  std::vector<bool> keep_atom(m.num_atoms(), false);
  std::vector<bool> keep_bond(m.num_bonds(), false);
  for (int u = 0; u < nn; ++u) {
    if (removed[u])
      continue;
    for (int a: t.nodes[u].atoms)
      keep_atom[a] = true;
    for (int k: t.nodes[u].bonds)
      keep_bond[k] = true;
  }

  IntermediateMol im;
  std::vector<int> amap(m.num_atoms(), -1);
  for (int a = 0; a < m.num_atoms(); ++a)
    if (keep_atom[a])
      amap[a] = im.mol.add_atom(m.atom(a));
  std::vector<int> bmap(m.num_bonds(), -1);
  for (int k = 0; k < m.num_bonds(); ++k) {
    const Bond &b = m.bond(k);
    if (keep_bond[k] && amap[b.begin] >= 0 && amap[b.end] >= 0)
      bmap[k] = im.mol.add_bond(amap[b.begin], amap[b.end], b.order);
  }
  for (int a = 0; a < m.num_atoms(); ++a) {
    const int i = amap[a];
    if (i < 0)
      continue;
    Atom &at = im.mol.mutable_atom(i);
    if (at.aromatic) {
      bool any = false;
      for (const auto &nb: im.mol.neighbors(i))
        any = any || im.mol.bond(nb.bond).order == BondOrder::kAromatic;
      if (!any) {
        at.aromatic = false;
        at.pi = false;
      }
    }
    if (at.fixed_h >= 0)
      at.fixed_h += m.bond_valence(a) - im.mol.bond_valence(i);
  }

  std::vector<int> nmap(nn, -1);
  for (int u = 0; u < nn; ++u) {
    if (removed[u])
      continue;
    TreeNode node = t.nodes[u];
    for (int &a: node.atoms)
      a = amap[a];
    for (int &k: node.bonds)
      k = bmap[k];
    std::sort(node.atoms.begin(), node.atoms.end());
    std::sort(node.bonds.begin(), node.bonds.end());
    nmap[u] = im.tree.num_nodes();
    im.tree.nodes.push_back(std::move(node));
  }
  for (const auto &[u, v]: t.edges)
    if (nmap[u] >= 0 && nmap[v] >= 0)
      im.tree.edges.emplace_back(nmap[u], nmap[v]);
  std::sort(im.tree.edges.begin(), im.tree.edges.end());
  im.tree.rebuild_adjacency();
  im.frontier.push_back(nmap[n_d]);
  if (new_n_d)
    *new_n_d = nmap[n_d];
  if (node_old_to_new)
    *node_old_to_new = std::move(nmap);
  return im;
}

namespace {

// Builds the fused molecule and the new node without touching `im`.
// `base_kekulizable` caches kekulizable(im.mol) when known.
void fuse(const IntermediateMol &im, const NodeVocabulary &vocab, int parent,
          int child_type, const AttachPoint &parent_pt,
          const AttachPoint &child_pt, const bool *base_kekulizable,
          Molecule &m, TreeNode &node) {
  if (parent < 0 || parent >= im.tree.num_nodes())
    throw ChemError("parent node out of range");
  if (child_type < 0 || child_type >= vocab.size())
    throw ChemError("child type out of range");
  const NodeTemplate &tpl = vocab.at(child_type);
  if (tpl.kind == NodeKind::kAtom)
    throw ChemError("single-atom fragments cannot be attached");
  const std::size_t arity = parent_pt.atoms.size();
  if (arity < 1 || arity > 2 || child_pt.atoms.size() != arity)
    throw ChemError("attachment points must both have one or two atoms");
  const TreeNode &pnode = im.tree.nodes[parent];
  for (int a: parent_pt.atoms)
    if (!contains(pnode.atoms, a))
      throw ChemError("parent attachment atom not in parent node");
  for (int c: child_pt.atoms)
    if (c < 0 || c >= tpl.mol.num_atoms())
      throw ChemError("child attachment atom out of range");
  if (arity == 2) {
    if (parent_pt.atoms[0] == parent_pt.atoms[1]
        || child_pt.atoms[0] == child_pt.atoms[1])
      throw ChemError("bond attachment needs two distinct atoms");
    const int k = im.mol.find_bond(parent_pt.atoms[0], parent_pt.atoms[1]);
    if (k < 0 || !contains(pnode.bonds, k))
      throw ChemError("parent attachment atoms are not a node bond");
    if (tpl.mol.find_bond(child_pt.atoms[0], child_pt.atoms[1]) < 0)
      throw ChemError("child attachment atoms are not bonded");
  }

  const bool was_kekulizable =
      base_kekulizable ? *base_kekulizable : kekulizable(im.mol);
  m = im.mol;
  std::vector<int> local(tpl.mol.num_atoms(), -1);
  std::vector<int> before_bv(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    const int p = parent_pt.atoms[i];
    const Atom &c = tpl.mol.atom(child_pt.atoms[i]);
    Atom &a = m.mutable_atom(p);
    if (a.element != c.element || a.charge != c.charge)
      throw ChemError("attachment atoms differ in element or charge");
    if (a.aromatic && c.aromatic && a.pi != c.pi)
      throw ChemError("attachment atoms differ in aromatic bonding");
    before_bv[i] = m.bond_valence(p);
    if (!a.aromatic && c.aromatic) {
      a.aromatic = true;
      a.pi = c.pi;
    }
    local[child_pt.atoms[i]] = p;
  }
  for (int c = 0; c < tpl.mol.num_atoms(); ++c) {
    if (local[c] >= 0)
      continue;
    Atom at = tpl.mol.atom(c);
    at.atom_map = 0;
    at.fixed_h = -1;
    local[c] = m.add_atom(at);
  }
  std::vector<int> node_bonds;
  for (const Bond &b: tpl.mol.bonds()) {
    const int u = local[b.begin], v = local[b.end];
    const int k = m.find_bond(u, v);
    if (k >= 0) {
      if (m.bond(k).order != b.order)
        throw ChemError("fused bond order mismatch");
      node_bonds.push_back(k);
    } else {
      node_bonds.push_back(m.add_bond(u, v, b.order));
    }
  }
  for (std::size_t i = 0; i < arity; ++i) {
    Atom &a = m.mutable_atom(parent_pt.atoms[i]);
    if (a.fixed_h >= 0) {
      a.fixed_h -= m.bond_valence(parent_pt.atoms[i]) - before_bv[i];
      if (a.fixed_h < 0)
        throw ChemError("attachment exceeds the pinned hydrogen count");
    }
  }
  if (!local_valence_ok(m) || (was_kekulizable && !kekulizable(m)))
    throw ChemError("attachment violates valence rules");

  node.atoms = local;
  std::sort(node.atoms.begin(), node.atoms.end());
  node.bonds = std::move(node_bonds);
  std::sort(node.bonds.begin(), node.bonds.end());
  node.kind = tpl.kind;
  node.type_id = child_type;
}

// Rejections that fuse() would also make, checked without copying.
bool quick_reject(const Molecule &m, const Molecule &tpl,
                  const AttachPoint &pp, const AttachPoint &cp) {
  for (std::size_t i = 0; i < pp.atoms.size(); ++i) {
    const Atom &a = m.atom(pp.atoms[i]);
    const Atom &c = tpl.atom(cp.atoms[i]);
    if (a.element != c.element || a.charge != c.charge)
      return true;
    if (a.aromatic && c.aromatic && a.pi != c.pi)
      return true;
  }
  if (pp.atoms.size() == 1 && m.atom(pp.atoms[0]).fixed_h < 0) {
    const Atom &a = m.atom(pp.atoms[0]);
    const int maxv = max_valence(a.element, a.charge);
    if (maxv >= 0
        && m.bond_valence(pp.atoms[0]) + tpl.bond_valence(cp.atoms[0]) > maxv)
      return true;
  }
  return false;
}

}  // namespace

int attach_node(IntermediateMol &im, const NodeVocabulary &vocab, int parent,
                int child_type, const AttachPoint &parent_pt,
                const AttachPoint &child_pt) {
  Molecule m;
  TreeNode node;
  fuse(im, vocab, parent, child_type, parent_pt, child_pt, nullptr, m, node);
  im.mol = std::move(m);
  const int id = im.tree.num_nodes();
  im.tree.nodes.push_back(std::move(node));
  im.tree.add_edge(parent, id);
  return id;
}

std::optional<IntermediateMol>
try_attach(const IntermediateMol &im, const NodeVocabulary &vocab, int parent,
           int child_type, const AttachPoint &parent_pt,
           const AttachPoint &child_pt) {
  IntermediateMol out = im;
  try {
    attach_node(out, vocab, parent, child_type, parent_pt, child_pt);
  } catch (const ChemError &) {
    return std::nullopt;
  }
  return out;
}

AttachmentCandidates
enumerate_attachment_candidates(const IntermediateMol &im,
                                const NodeVocabulary &vocab, int parent,
                                int child_type) {
  AttachmentCandidates out;
  const NodeTemplate &tpl = vocab.at(child_type);
  if (tpl.kind == NodeKind::kAtom)
    return out;
  const TreeNode &pnode = im.tree.nodes[parent];

  std::vector<int> in_parent(im.mol.num_atoms(), 0);
  for (int a: pnode.atoms)
    in_parent[a] = 1;
  const auto cls = symmetry_classes(im.mol, in_parent);
  const auto &tcls = tpl.symmetry;

  std::vector<AttachPoint> child_atoms;
  {
    std::set<int> seen;
    for (int c = 0; c < tpl.mol.num_atoms(); ++c)
      if (seen.insert(tcls[c]).second)
        child_atoms.push_back({ { c } });
  }
  std::vector<AttachPoint> child_bonds;
  if (tpl.kind == NodeKind::kRing && pnode.kind == NodeKind::kRing) {
    std::vector<std::pair<int, int>> oriented;
    for (const Bond &b: tpl.mol.bonds()) {
      oriented.emplace_back(b.begin, b.end);
      oriented.emplace_back(b.end, b.begin);
    }
    std::sort(oriented.begin(), oriented.end());
    std::set<std::pair<int, int>> seen;
    for (const auto &[a, b]: oriented)
      if (seen.emplace(tcls[a], tcls[b]).second)
        child_bonds.push_back({ { a, b } });
  }

  const bool base_kek = kekulizable(im.mol);
  Molecule scratch;
  TreeNode scratch_node;
  auto consider = [&](const AttachPoint &pp,
                      const std::vector<AttachPoint> &children) {
    std::vector<AttachPoint> legal;
    for (const auto &cp: children) {
      if (quick_reject(im.mol, tpl.mol, pp, cp))
        continue;
      try {
        fuse(im, vocab, parent, child_type, pp, cp, &base_kek, scratch,
             scratch_node);
        legal.push_back(cp);
      } catch (const ChemError &) {
      }
    }
    if (!legal.empty()) {
      out.parent.push_back(pp);
      out.children.push_back(std::move(legal));
    }
  };

  {
    std::set<int> seen;
    for (int a: pnode.atoms)
      if (seen.insert(cls[a]).second)
        consider({ { a } }, child_atoms);
  }
  if (!child_bonds.empty()) {
    std::set<std::pair<int, int>> seen;
    for (int k: pnode.bonds) {
      const Bond &b = im.mol.bond(k);
      const int lo = std::min(b.begin, b.end), hi = std::max(b.begin, b.end);
      const auto key = std::minmax(cls[lo], cls[hi]);
      if (seen.emplace(key.first, key.second).second)
        consider({ { lo, hi } }, child_bonds);
    }
  }
  return out;
}

}  // namespace modof::chem
