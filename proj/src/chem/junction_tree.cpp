//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/junction_tree.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "modof/chem/rings.h"
#include "modof/chem/smiles.h"
#include "modof/chem/vocabulary.h"

namespace modof::chem {
namespace {

int find_root(std::vector<int> &parent, int x) {
  while (parent[x] != x)
    x = parent[x] = parent[parent[x]];
  return x;
}

int count_shared(const std::vector<int> &a, const std::vector<int> &b) {
  int n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool connected_without(const std::vector<std::vector<int>> &adj,
                       const std::vector<bool> &alive_edge,
                       const std::vector<std::tuple<int, int, int>> &edges,
                       std::size_t skip, int from, int to) {
  // adj holds edge indices per node.
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> stack{ from };
  seen[from] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == to)
      return true;
    for (int e: adj[u]) {
      if (!alive_edge[e] || static_cast<std::size_t>(e) == skip)
        continue;
      const auto &[w, a, b] = edges[e];
      const int v = a == u ? b : a;
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

std::vector<int> JunctionTree::shared_atoms(int u, int v) const {
  std::vector<int> out;
  std::set_intersection(nodes[u].atoms.begin(), nodes[u].atoms.end(),
                        nodes[v].atoms.begin(), nodes[v].atoms.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<std::vector<int>> JunctionTree::atom_nodes(int num_atoms) const {
  std::vector<std::vector<int>> out(num_atoms);
  for (int n = 0; n < num_nodes(); ++n)
    for (int a: nodes[n].atoms)
      out[a].push_back(n);
  return out;
}

std::vector<int> JunctionTree::branch(int start, int blocked) const {
  std::vector<bool> seen(nodes.size(), false);
  seen[blocked] = true;
  seen[start] = true;
  std::vector<int> out{ start };
  for (std::size_t h = 0; h < out.size(); ++h)
    for (int w: adj[out[h]])
      if (!seen[w]) {
        seen[w] = true;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

void JunctionTree::add_edge(int u, int v) {
  if (u > v)
    std::swap(u, v);
  edges.emplace_back(u, v);
  std::sort(edges.begin(), edges.end());
  rebuild_adjacency();
}

void JunctionTree::rebuild_adjacency() {
  adj.assign(nodes.size(), {});
  for (const auto &[u, v]: edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &l: adj)
    std::sort(l.begin(), l.end());
}

JunctionTree decompose(const Molecule &m) {
  JunctionTree t;
  const auto rings = sssr(m);

  // Bridged systems: union rings sharing at least three atoms.
  const int nr = static_cast<int>(rings.size());
  std::vector<std::vector<int>> ring_atoms(nr);
  for (int r = 0; r < nr; ++r) {
    ring_atoms[r] = rings[r].atoms;
    std::sort(ring_atoms[r].begin(), ring_atoms[r].end());
  }
  std::vector<int> parent(nr);
  std::iota(parent.begin(), parent.end(), 0);
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b)
      if (count_shared(ring_atoms[a], ring_atoms[b]) >= 3)
        parent[find_root(parent, a)] = find_root(parent, b);

  std::vector<bool> in_ring_node(m.num_bonds(), false);
  std::vector<bool> covered(m.num_atoms(), false);
  std::vector<int> group_node(nr, -1);
  for (int r = 0; r < nr; ++r) {
    const int g = find_root(parent, r);
    if (group_node[g] < 0) {
      group_node[g] = static_cast<int>(t.nodes.size());
      t.nodes.push_back({ {}, {}, NodeKind::kRing, -1 });
    }
    TreeNode &node = t.nodes[group_node[g]];
    node.atoms.insert(node.atoms.end(), ring_atoms[r].begin(),
                      ring_atoms[r].end());
    node.bonds.insert(node.bonds.end(), rings[r].bonds.begin(),
                      rings[r].bonds.end());
  }
  for (auto &node: t.nodes) {
    std::sort(node.atoms.begin(), node.atoms.end());
    node.atoms.erase(std::unique(node.atoms.begin(), node.atoms.end()),
                     node.atoms.end());
    std::sort(node.bonds.begin(), node.bonds.end());
    node.bonds.erase(std::unique(node.bonds.begin(), node.bonds.end()),
                     node.bonds.end());
    for (int k: node.bonds)
      in_ring_node[k] = true;
    for (int a: node.atoms)
      covered[a] = true;
  }
  for (int k = 0; k < m.num_bonds(); ++k) {
    if (in_ring_node[k])
      continue;
    const Bond &b = m.bond(k);
    t.nodes.push_back({ { std::min(b.begin, b.end), std::max(b.begin, b.end) },
                        { k },
                        NodeKind::kBond,
                        -1 });
    covered[b.begin] = covered[b.end] = true;
  }
  for (int a = 0; a < m.num_atoms(); ++a)
    if (!covered[a])
      t.nodes.push_back({ { a }, {}, NodeKind::kAtom, -1 });

  std::stable_sort(t.nodes.begin(), t.nodes.end(),
                   [](const TreeNode &x, const TreeNode &y) {
                     return x.atoms < y.atoms;
                   });

  // Candidate edges (shared count, u, v).
  const int nn = t.num_nodes();
  std::vector<std::tuple<int, int, int>> cand;
  for (int u = 0; u < nn; ++u)
    for (int v = u + 1; v < nn; ++v) {
      const int s = count_shared(t.nodes[u].atoms, t.nodes[v].atoms);
      if (s > 0)
        cand.emplace_back(s, u, v);
    }
  std::sort(cand.begin(), cand.end());
  std::vector<std::vector<int>> inc(nn);
  for (std::size_t e = 0; e < cand.size(); ++e) {
    inc[std::get<1>(cand[e])].push_back(static_cast<int>(e));
    inc[std::get<2>(cand[e])].push_back(static_cast<int>(e));
  }
  std::vector<bool> alive(cand.size(), true);
  int alive_count = static_cast<int>(cand.size());
  int comps = 0;
  {
    std::vector<int> p(nn);
    std::iota(p.begin(), p.end(), 0);
    comps = nn;
    for (const auto &[s, u, v]: cand) {
      const int a = find_root(p, u), b = find_root(p, v);
      if (a != b) {
        p[a] = b;
        --comps;
      }
    }
  }
  for (std::size_t e = 0; e < cand.size() && alive_count > nn - comps; ++e) {
    const auto &[s, u, v] = cand[e];
    if (connected_without(inc, alive, cand, e, u, v)) {
      alive[e] = false;
      --alive_count;
    }
  }
  for (std::size_t e = 0; e < cand.size(); ++e)
    if (alive[e])
      t.edges.emplace_back(std::get<1>(cand[e]), std::get<2>(cand[e]));
  std::sort(t.edges.begin(), t.edges.end());
  t.rebuild_adjacency();
  return t;
}

JunctionTree junction_tree(const Molecule &m, const NodeVocabulary &vocab) {
  JunctionTree t = decompose(m);
  for (auto &node: t.nodes)
    node.type_id = vocab.lookup(node_descriptor(m, node));
  return t;
}

Molecule node_fragment(const Molecule &m, const TreeNode &node,
                       std::vector<int> *atom_order) {
  Molecule f;
  std::vector<int> local(m.num_atoms(), -1);
  const bool ring = node.kind == NodeKind::kRing;
  for (int a: node.atoms) {
    Atom at = m.atom(a);
    at.atom_map = 0;
    at.fixed_h = -1;
    if (!ring) {
      at.aromatic = false;
      at.pi = false;
    }
    local[a] = f.add_atom(at);
  }
  for (int k: node.bonds) {
    const Bond &b = m.bond(k);
    BondOrder o = b.order;
    if (!ring && o == BondOrder::kAromatic)
      o = BondOrder::kSingle;
    f.add_bond(local[b.begin], local[b.end], o);
  }
  if (atom_order)
    *atom_order = node.atoms;
  return f;
}

std::string node_descriptor(const Molecule &m, const TreeNode &node) {
  return write_fragment_smiles(node_fragment(m, node));
}

}  // namespace modof::chem
