//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/isomorphism.h"

#include <algorithm>

namespace modof::chem {
namespace {

class Matcher {
public:
  Matcher(const Molecule &a, const Molecule &b, const AtomCompat &compat,
          const MappingVisitor &visit, const IsoOptions &opts)
      : a_(a), b_(b), compat_(compat), visit_(visit), opts_(opts),
        map_(a.num_atoms(), -1), used_(b.num_atoms(), false) {
    // Connected order: BFS from highest-degree atoms keeps every new atom
    // adjacent to an already mapped one whenever possible.
    std::vector<bool> seen(a.num_atoms(), false);
    std::vector<int> roots(a.num_atoms());
    for (int i = 0; i < a.num_atoms(); ++i)
      roots[i] = i;
    std::stable_sort(roots.begin(), roots.end(), [&](int x, int y) {
      return a.degree(x) > a.degree(y);
    });
    for (int r: roots) {
      if (seen[r])
        continue;
      seen[r] = true;
      std::size_t head = order_.size();
      order_.push_back(r);
      while (head < order_.size()) {
        const int u = order_[head++];
        for (const auto &nb: a.neighbors(u)) {
          if (!seen[nb.atom]) {
            seen[nb.atom] = true;
            order_.push_back(nb.atom);
          }
        }
      }
    }
  }

  bool run() { return extend(0); }

private:
  bool feasible(int u, int v) const {
    if (a_.degree(u) != b_.degree(v) || !compat_(u, v))
      return false;
    // Edges to mapped atoms must correspond in both directions.
    int mapped_nbs = 0;
    for (const auto &nb: a_.neighbors(u)) {
      const int w = map_[nb.atom];
      if (w < 0)
        continue;
      ++mapped_nbs;
      const int k = b_.find_bond(v, w);
      if (k < 0)
        return false;
      if (opts_.compare_bond_orders
          && b_.bond(k).order != a_.bond(nb.bond).order)
        return false;
    }
    int mapped_b = 0;
    for (const auto &nb: b_.neighbors(v))
      if (used_[nb.atom])
        ++mapped_b;
    return mapped_b == mapped_nbs;
  }

  bool extend(std::size_t depth) {
    if (opts_.max_steps > 0 && ++steps_ > opts_.max_steps)
      return true;
    if (depth == order_.size())
      return visit_(map_);
    const int u = order_[depth];
    for (int v = 0; v < b_.num_atoms(); ++v) {
      if (used_[v] || !feasible(u, v))
        continue;
      map_[u] = v;
      used_[v] = true;
      if (extend(depth + 1))
        return true;
      map_[u] = -1;
      used_[v] = false;
    }
    return false;
  }

  const Molecule &a_;
  const Molecule &b_;
  const AtomCompat &compat_;
  const MappingVisitor &visit_;
  const IsoOptions &opts_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> order_;
  long long steps_ = 0;
};

}  // namespace

bool enumerate_isomorphisms(const Molecule &a, const Molecule &b,
                            const AtomCompat &compat,
                            const MappingVisitor &visit,
                            const IsoOptions &opts) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  return Matcher(a, b, compat, visit, opts).run();
}

std::optional<std::vector<int>>
find_isomorphism(const Molecule &a, const Molecule &b, const AtomCompat &compat,
                 const IsoOptions &opts) {
  std::optional<std::vector<int>> found;
  long long budget_hit = 0;
  enumerate_isomorphisms(
      a, b, compat,
      [&](const std::vector<int> &m) {
        found = m;
        return true;
      },
      opts);
  (void)budget_hit;
  return found;
}

bool are_isomorphic(const Molecule &a, const Molecule &b) {
  auto compat = [&](int u, int v) {
    const Atom &x = a.atom(u);
    const Atom &y = b.atom(v);
    return x.element == y.element && x.charge == y.charge
           && x.aromatic == y.aromatic;
  };
  return find_isomorphism(a, b, compat).has_value();
}

}  // namespace modof::chem
