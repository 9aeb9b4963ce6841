//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/molecule.h"

#include <algorithm>
#include <numeric>

namespace modof::chem {

int Molecule::add_atom(const Atom &atom) {
  atoms_.push_back(atom);
  adj_.emplace_back();
  return num_atoms() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw ChemError("bond endpoint out of range");
  if (a == b)
    throw ChemError("self-loop bond on atom " + std::to_string(a));
  if (find_bond(a, b) >= 0)
    throw ChemError("duplicate bond " + std::to_string(a) + "-"
                    + std::to_string(b));
  const int k = num_bonds();
  bonds_.push_back({ a, b, order });
  adj_[a].push_back({ b, k });
  adj_[b].push_back({ a, k });
  return k;
}

int Molecule::find_bond(int a, int b) const {
  if (a < 0 || a >= num_atoms())
    return -1;
  for (const auto &nb: adj_[a])
    if (nb.atom == b)
      return nb.bond;
  return -1;
}

int Molecule::bond_valence(int i) const {
  int v = atoms_[i].pi ? 1 : 0;
  for (const auto &nb: adj_[i])
    v += valence_contribution(bonds_[nb.bond].order);
  return v;
}

int Molecule::hydrogens(int i) const {
  const Atom &a = atoms_[i];
  if (a.fixed_h >= 0)
    return a.fixed_h;
  const int v = bond_valence(i);
  const int target = lowest_valence_at_least(a.element, a.charge, v);
  return target < 0 ? 0 : target - v;
}

int Molecule::total_hydrogens() const {
  int h = 0;
  for (int i = 0; i < num_atoms(); ++i)
    h += hydrogens(i);
  return h;
}

Molecule Molecule::without_atoms(const std::vector<bool> &remove,
                                 std::vector<int> *old_to_new) const {
  std::vector<int> keep;
  for (int i = 0; i < num_atoms(); ++i)
    if (!remove[i])
      keep.push_back(i);
  return subgraph(keep, old_to_new);
}

Molecule Molecule::subgraph(std::span<const int> keep,
                            std::vector<int> *old_to_new) const {
  std::vector<int> map(num_atoms(), -1);
  Molecule out;
  for (int i: keep)
    map[i] = out.add_atom(atoms_[i]);
  for (const auto &b: bonds_)
    if (map[b.begin] >= 0 && map[b.end] >= 0)
      out.add_bond(map[b.begin], map[b.end], b.order);
  if (old_to_new != nullptr)
    *old_to_new = std::move(map);
  return out;
}

std::vector<int> Molecule::components(int *count) const {
  std::vector<int> comp(num_atoms(), -1);
  int n = 0;
  std::vector<int> stack;
  for (int s = 0; s < num_atoms(); ++s) {
    if (comp[s] >= 0)
      continue;
    comp[s] = n;
    stack.push_back(s);
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (const auto &nb: adj_[a]) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = n;
          stack.push_back(nb.atom);
        }
      }
    }
    ++n;
  }
  if (count != nullptr)
    *count = n;
  return comp;
}

Molecule Molecule::permuted(std::span<const int> perm) const {
  std::vector<int> inv(num_atoms());
  for (int i = 0; i < num_atoms(); ++i)
    inv[perm[i]] = i;
  Molecule out;
  for (int j = 0; j < num_atoms(); ++j)
    out.add_atom(atoms_[inv[j]]);
  for (const auto &b: bonds_)
    out.add_bond(perm[b.begin], perm[b.end], b.order);
  return out;
}

bool infer_pi(const Molecule &m, int i, int explicit_h) {
  const Atom &a = m.atom(i);
  if (!a.aromatic)
    return false;
  int sigma = explicit_h;
  for (const auto &nb: m.neighbors(i))
    sigma += valence_contribution(m.bond(nb.bond).order);
  return !valence_allowed(a.element, a.charge, sigma)
         && lowest_valence_at_least(a.element, a.charge, sigma + 1) >= 0;
}

std::vector<Violation> valence_check(const Molecule &m) {
  std::vector<Violation> out;
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    const int maxv = max_valence(a.element, a.charge);
    const int v = m.bond_valence(i) + (a.fixed_h >= 0 ? a.fixed_h : 0);
    if (maxv < 0 || v > maxv) {
      out.push_back({ i, "valence " + std::to_string(v) + " exceeds "
                             + std::to_string(maxv) + " for "
                             + std::string(symbol(a.element)) });
      continue;
    }
    bool has_aromatic = false;
    for (const auto &nb: m.neighbors(i)) {
      if (m.bond(nb.bond).order == BondOrder::kAromatic) {
        has_aromatic = true;
        if (!a.aromatic || !m.atom(nb.atom).aromatic)
          out.push_back({ i, "aromatic bond on non-aromatic atom" });
      }
    }
    if (a.pi && !has_aromatic)
      out.push_back({ i, "aromatic atom without aromatic bonds" });
  }
  if (!out.empty())
    return out;
  std::vector<int> orders;
  int bad = -1;
  if (!kekulize(m, orders, &bad))
    out.push_back({ bad, "aromatic system cannot be kekulized" });
  return out;
}

}  // namespace modof::chem
