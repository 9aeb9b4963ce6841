//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/pairgen/stats.h"

#include <algorithm>

#include "modof/chem/smiles.h"

namespace modof::pairgen {

std::string nodes_fragment_smiles(const chem::Molecule &m,
                                  const chem::JunctionTree &t,
                                  const std::vector<int> &nodes) {
  std::vector<bool> atom_in(m.num_atoms(), false), bond_in(m.num_bonds(),
                                                           false);
  for (int n: nodes) {
    for (int a: t.nodes[n].atoms)
      atom_in[a] = true;
    for (int k: t.nodes[n].bonds)
      bond_in[k] = true;
  }
  chem::Molecule f;
  std::vector<int> local(m.num_atoms(), -1);
  for (int a = 0; a < m.num_atoms(); ++a) {
    if (!atom_in[a])
      continue;
    chem::Atom at = m.atom(a);
    at.atom_map = 0;
    at.fixed_h = -1;
    local[a] = f.add_atom(at);
  }
  for (int k = 0; k < m.num_bonds(); ++k)
    if (bond_in[k])
      f.add_bond(local[m.bond(k).begin], local[m.bond(k).end],
                 m.bond(k).order);
  for (int a = 0; a < f.num_atoms(); ++a) {
    bool any = false;
    for (const auto &nb: f.neighbors(a))
      any = any || f.bond(nb.bond).order == chem::BondOrder::kAromatic;
    if (!any) {
      f.mutable_atom(a).aromatic = false;
      f.mutable_atom(a).pi = false;
    }
  }
  return chem::write_fragment_smiles(f);
}

int exclusive_atom_count(const chem::JunctionTree &t, int num_atoms,
                         const std::vector<int> &nodes) {
  std::vector<bool> in(t.num_nodes(), false);
  for (int n: nodes)
    in[n] = true;
  std::vector<int> inside(num_atoms, 0), outside(num_atoms, 0);
  for (int n = 0; n < t.num_nodes(); ++n)
    for (int a: t.nodes[n].atoms)
      ++(in[n] ? inside : outside)[a];
  int c = 0;
  for (int a = 0; a < num_atoms; ++a)
    if (inside[a] > 0 && outside[a] == 0)
      ++c;
  return c;
}

FragmentStats fragment_stats(const std::vector<TrainingPair> &pairs) {
  FragmentStats s;
  long long removed_atoms = 0, added_atoms = 0;
  for (const auto &p: pairs) {
    ++s.pairs;
    if (!p.removal.empty()) {
      ++s.pairs_with_removal;
      ++s.removal[nodes_fragment_smiles(p.mx, p.tx, p.removal)];
      removed_atoms += exclusive_atom_count(p.tx, p.mx.num_atoms(), p.removal);
    }
    if (!p.path.added.empty()) {
      ++s.pairs_with_attachment;
      ++s.attachment[nodes_fragment_smiles(p.my, p.ty, p.path.added)];
      added_atoms +=
          exclusive_atom_count(p.ty, p.my.num_atoms(), p.path.added);
    }
  }
  if (s.pairs_with_removal > 0)
    s.mean_removal_atoms = static_cast<double>(removed_atoms)
                           / static_cast<double>(s.pairs_with_removal);
  if (s.pairs_with_attachment > 0)
    s.mean_attachment_atoms = static_cast<double>(added_atoms)
                              / static_cast<double>(s.pairs_with_attachment);
  return s;
}

std::vector<std::pair<std::string, long long>>
top_fragments(const std::map<std::string, long long> &table, std::size_t k) {
  std::vector<std::pair<std::string, long long>> v(table.begin(), table.end());
  std::stable_sort(v.begin(), v.end(), [](const auto &a, const auto &b) {
    return a.second > b.second;
  });
  if (v.size() > k)
    v.resize(k);
  return v;
}

}  // namespace modof::pairgen
