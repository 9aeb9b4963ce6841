//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/rings.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>

namespace modof::chem {
namespace {

using Bits = std::vector<std::uint64_t>;

int lowest_bit(const Bits &b) {
  for (std::size_t w = 0; w < b.size(); ++w)
    if (b[w] != 0)
      return static_cast<int>(w * 64 + std::countr_zero(b[w]));
  return -1;
}

struct Candidate {
  Bits edges;
  std::vector<int> sorted_atoms;
  std::vector<int> bonds;
};

// Shortest-path tree from `root`; each atom's parent is its lowest-indexed
// neighbor one step closer.
void bfs_tree(const Molecule &m, int root, std::vector<int> &dist,
              std::vector<int> &parent_bond) {
  const int n = m.num_atoms();
  dist.assign(n, -1);
  parent_bond.assign(n, -1);
  std::vector<int> order{ root };
  dist[root] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    const int u = order[h];
    for (const auto &nb: m.neighbors(u)) {
      if (dist[nb.atom] < 0) {
        dist[nb.atom] = dist[u] + 1;
        order.push_back(nb.atom);
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    if (dist[u] <= 0)
      continue;
    int best = -1;
    for (const auto &nb: m.neighbors(u)) {
      if (dist[nb.atom] == dist[u] - 1
          && (best < 0 || nb.atom < m.bond(best).other(u)))
        best = nb.bond;
    }
    parent_bond[u] = best;
  }
}

std::vector<int> cycle_order(const Molecule &m, const std::vector<int> &atoms,
                             const std::vector<int> &bonds) {
  // atoms sorted; walk the cycle starting at atoms.front().
  auto ring_nbs = [&](int a) {
    std::vector<int> out;
    for (int k: bonds) {
      const Bond &b = m.bond(k);
      if (b.begin == a || b.end == a)
        out.push_back(b.other(a));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<int> order{ atoms.front() };
  int prev = atoms.front();
  int cur = ring_nbs(prev).front();
  while (cur != atoms.front()) {
    order.push_back(cur);
    const auto nbs = ring_nbs(cur);
    const int next = nbs[0] == prev ? nbs[1] : nbs[0];
    prev = cur;
    cur = next;
  }
  return order;
}

}  // namespace

int cycle_rank(const Molecule &m) {
  int comps = 0;
  m.components(&comps);
  return m.num_bonds() - m.num_atoms() + comps;
}

std::vector<Ring> sssr(const Molecule &m) {
  const int rank = cycle_rank(m);
  if (rank <= 0)
    return {};
  const int n = m.num_atoms();
  const std::size_t words = (m.num_bonds() + 63) / 64;

  std::vector<Candidate> cands;
  std::vector<int> dist, parent_bond;
  for (int v = 0; v < n; ++v) {
    bfs_tree(m, v, dist, parent_bond);
    for (int k = 0; k < m.num_bonds(); ++k) {
      const Bond &b = m.bond(k);
      if (dist[b.begin] < 0 || dist[b.end] < 0)
        continue;
      std::vector<int> atoms;
      std::vector<int> bonds{ k };
      std::vector<char> seen(n, 0);
      bool simple = true;
      for (int end: { b.begin, b.end }) {
        int u = end;
        while (true) {
          if (seen[u] && u != v) {
            simple = false;
            break;
          }
          if (!seen[u]) {
            seen[u] = 1;
            atoms.push_back(u);
          }
          if (u == v)
            break;
          bonds.push_back(parent_bond[u]);
          u = m.bond(parent_bond[u]).other(u);
        }
        if (!simple)
          break;
      }
      if (!simple || atoms.size() < 3)
        continue;
      Candidate c;
      c.edges.assign(words, 0);
      for (int e: bonds)
        c.edges[e / 64] |= std::uint64_t{ 1 } << (e % 64);
      std::sort(atoms.begin(), atoms.end());
      std::sort(bonds.begin(), bonds.end());
      if (atoms.size() != bonds.size())
        continue;
      c.sorted_atoms = std::move(atoms);
      c.bonds = std::move(bonds);
      cands.push_back(std::move(c));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.sorted_atoms.size() != b.sorted_atoms.size())
                return a.sorted_atoms.size() < b.sorted_atoms.size();
              if (a.sorted_atoms != b.sorted_atoms)
                return a.sorted_atoms < b.sorted_atoms;
              return a.edges < b.edges;
            });

  std::vector<Bits> basis(m.num_bonds());
  std::vector<bool> has(m.num_bonds(), false);
  std::vector<Ring> rings;
  const Bits *last = nullptr;
  for (const auto &c: cands) {
    if (last && *last == c.edges)
      continue;
    last = &c.edges;
    Bits v = c.edges;
    int p;
    while ((p = lowest_bit(v)) >= 0 && has[p])
      for (std::size_t w = 0; w < words; ++w)
        v[w] ^= basis[p][w];
    if (p < 0)
      continue;
    basis[p] = std::move(v);
    has[p] = true;
    rings.push_back({ cycle_order(m, c.sorted_atoms, c.bonds), c.bonds });
    if (static_cast<int>(rings.size()) == rank)
      break;
  }
  return rings;
}

std::vector<bool> ring_bond_flags(const Molecule &m) {
  std::vector<bool> flags(m.num_bonds(), false);
  for (const auto &r: sssr(m))
    for (int k: r.bonds)
      flags[k] = true;
  return flags;
}

std::vector<bool> ring_atom_flags(const Molecule &m) {
  std::vector<bool> flags(m.num_atoms(), false);
  for (const auto &r: sssr(m))
    for (int a: r.atoms)
      flags[a] = true;
  return flags;
}

}  // namespace modof::chem
