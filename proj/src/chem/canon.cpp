//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/canon.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "modof/chem/smiles.h"

namespace modof::chem {
namespace {

template <class Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> rank(n, 0);
  int r = 0;
  for (int k = 0; k < n; ++k) {
    if (k > 0 && keys[order[k - 1]] < keys[order[k]])
      ++r;
    rank[order[k]] = r;
  }
  return rank;
}

int count_distinct(const std::vector<int> &ranks) {
  int mx = -1;
  for (int r: ranks)
    mx = std::max(mx, r);
  return mx + 1;
}

std::vector<int> initial_ranks(const Molecule &m,
                               std::span<const int> extra = {}) {
  using Key = std::tuple<int, int, int, int, int, int, int, int, int>;
  std::vector<Key> keys(m.num_atoms());
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    keys[i] = { m.degree(i), atomic_number(a.element), a.charge,
                a.aromatic ? 1 : 0, a.pi ? 1 : 0, m.hydrogens(i),
                a.atom_map, a.fixed_h, extra.empty() ? 0 : extra[i] };
  }
  return dense_ranks(keys);
}

class CanonSearch {
public:
  CanonSearch(const Molecule &m, int max_leaves)
      : m_(m), max_leaves_(max_leaves) { }

  void run(std::vector<int> ranks) { descend(refine_ranks(m_, std::move(ranks))); }

  CanonicalForm result() && { return std::move(best_); }

private:
  void descend(const std::vector<int> &ranks) {
    const int n = m_.num_atoms();
    if (count_distinct(ranks) == n) {
      std::string s = write_smiles_ranked(m_, ranks);
      if (leaves_ == 0 || s < best_.smiles) {
        best_.smiles = std::move(s);
        best_.rank = ranks;
      }
      ++leaves_;
      return;
    }
    // First tied class: smallest rank value with >= 2 members.
    std::vector<int> size(n, 0);
    for (int r: ranks)
      ++size[r];
    int target = -1;
    for (int r = 0; r < n; ++r) {
      if (size[r] >= 2) {
        target = r;
        break;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (ranks[i] != target)
        continue;
      std::vector<int> next(ranks);
      for (int j = 0; j < n; ++j) {
        if (next[j] > target)
          ++next[j];
        else if (next[j] == target && j != i)
          next[j] = target + 1;
      }
      descend(refine_ranks(m_, std::move(next)));
      if (leaves_ >= max_leaves_)
        return;
    }
  }

  const Molecule &m_;
  int max_leaves_;
  int leaves_ = 0;
  CanonicalForm best_;
};

}  // namespace

std::vector<int> refine_ranks(const Molecule &m, std::vector<int> ranks) {
  const int n = m.num_atoms();
  int classes = count_distinct(ranks);
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  while (true) {
    std::vector<Key> keys(n);
    for (int i = 0; i < n; ++i) {
      keys[i].first = ranks[i];
      auto &nbs = keys[i].second;
      for (const auto &nb: m.neighbors(i))
        nbs.emplace_back(ranks[nb.atom],
                         static_cast<int>(m.bond(nb.bond).order));
      std::sort(nbs.begin(), nbs.end());
    }
    auto next = dense_ranks(keys);
    const int next_classes = count_distinct(next);
    ranks = std::move(next);
    if (next_classes == classes)
      return ranks;
    classes = next_classes;
  }
}

std::vector<int> symmetry_classes(const Molecule &m) {
  return refine_ranks(m, initial_ranks(m));
}

std::vector<int> symmetry_classes(const Molecule &m,
                                  std::span<const int> extra) {
  return refine_ranks(m, initial_ranks(m, extra));
}

CanonicalForm canonicalize(const Molecule &m, int max_leaves) {
  if (m.empty())
    return {};
  CanonSearch search(m, std::max(1, max_leaves));
  search.run(initial_ranks(m));
  return std::move(search).result();
}

}  // namespace modof::chem
