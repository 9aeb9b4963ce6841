//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <string>
#include <vector>

#include "modof/chem/canon.h"
#include "modof/chem/smiles.h"

namespace modof::chem {
namespace {

bool writes_bare(const Molecule &m, int i) {
  const Atom &a = m.atom(i);
  if (!is_organic_subset(a.element) || a.charge != 0 || a.atom_map != 0
      || a.fixed_h >= 0)
    return false;
  if (a.aromatic && infer_pi(m, i, 0) != a.pi)
    return false;
  return true;
}

std::string atom_text(const Molecule &m, int i) {
  const Atom &a = m.atom(i);
  std::string sym(symbol(a.element));
  if (a.aromatic)
    sym[0] = static_cast<char>(sym[0] - 'A' + 'a');
  if (writes_bare(m, i))
    return sym;

  std::string s = "[" + sym;
  const int h = m.hydrogens(i);
  if (h > 0) {
    s += 'H';
    if (h > 1)
      s += std::to_string(h);
  }
  if (a.charge != 0) {
    s += a.charge > 0 ? '+' : '-';
    const int mag = a.charge > 0 ? a.charge : -a.charge;
    if (mag > 1)
      s += std::to_string(mag);
  }
  if (a.atom_map != 0)
    s += ":" + std::to_string(a.atom_map);
  s += ']';
  return s;
}

std::string bond_text(const Molecule &m, int k) {
  const Bond &b = m.bond(k);
  const bool both_aromatic =
      m.atom(b.begin).aromatic && m.atom(b.end).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  }
  return "";
}

class RankedWriter {
public:
  RankedWriter(const Molecule &m, const std::vector<int> &rank)
      : m_(m), rank_(rank), visited_(m.num_atoms(), false),
        children_(m.num_atoms()), opens_(m.num_atoms()),
        closes_(m.num_atoms()), used_bond_(m.num_bonds(), false),
        digit_of_bond_(m.num_bonds(), -1) { }

  std::string write() {
    const int n = m_.num_atoms();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });
    std::string out;
    for (int start: order) {
      if (visited_[start])
        continue;
      visited_[start] = true;
      plan(start, -1);
      if (!out.empty())
        out += '.';
      emit(start, out);
    }
    return out;
  }

private:
  std::vector<Neighbor> sorted_neighbors(int a) const {
    std::vector<Neighbor> nbs(m_.neighbors(a).begin(), m_.neighbors(a).end());
    std::sort(nbs.begin(), nbs.end(), [&](const Neighbor &x, const Neighbor &y) {
      return rank_[x.atom] < rank_[y.atom];
    });
    return nbs;
  }

  void plan(int a, int parent_bond) {
    for (const auto &nb: sorted_neighbors(a)) {
      if (nb.bond == parent_bond || used_bond_[nb.bond])
        continue;
      used_bond_[nb.bond] = true;
      if (visited_[nb.atom]) {
        opens_[nb.atom].push_back(nb.bond);
        closes_[a].push_back(nb.bond);
      } else {
        visited_[nb.atom] = true;
        children_[a].push_back(nb);
        plan(nb.atom, nb.bond);
      }
    }
  }

  int take_digit() {
    for (int d = 1;; ++d) {
      if (std::find(in_use_.begin(), in_use_.end(), d) == in_use_.end()) {
        in_use_.push_back(d);
        return d;
      }
    }
  }

  static std::string digit_text(int d) {
    if (d < 10)
      return std::to_string(d);
    return "%" + std::to_string(d);
  }

  void emit(int a, std::string &out) {
    out += atom_text(m_, a);
    for (int k: closes_[a]) {
      const int d = digit_of_bond_[k];
      out += digit_text(d);
      in_use_.erase(std::find(in_use_.begin(), in_use_.end(), d));
    }
    for (int k: opens_[a]) {
      const int d = take_digit();
      digit_of_bond_[k] = d;
      out += bond_text(m_, k);
      out += digit_text(d);
    }
    const auto &ch = children_[a];
    for (std::size_t c = 0; c < ch.size(); ++c) {
      const bool last = c + 1 == ch.size();
      if (!last)
        out += '(';
      out += bond_text(m_, ch[c].bond);
      emit(ch[c].atom, out);
      if (!last)
        out += ')';
    }
  }

  const Molecule &m_;
  const std::vector<int> &rank_;
  std::vector<bool> visited_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<int>> opens_;
  std::vector<std::vector<int>> closes_;
  std::vector<bool> used_bond_;
  std::vector<int> digit_of_bond_;
  std::vector<int> in_use_;
};

}  // namespace

std::string write_smiles_ranked(const Molecule &m,
                                const std::vector<int> &rank) {
  return RankedWriter(m, rank).write();
}

std::string write_smiles(const Molecule &m) {
  const auto violations = valence_check(m);
  if (!violations.empty())
    throw ChemError("cannot write SMILES: atom "
                    + std::to_string(violations.front().atom) + ": "
                    + violations.front().message);
  return canonicalize(m).smiles;
}

std::string write_fragment_smiles(const Molecule &m) {
  return canonicalize(m).smiles;
}

}  // namespace modof::chem
