//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <vector>

#include "modof/chem/molecule.h"

namespace modof::chem {
namespace {

class PiMatcher {
public:
  PiMatcher(const Molecule &m): m_(m), mate_(m.num_atoms(), -1) {
    for (int i = 0; i < m.num_atoms(); ++i)
      if (m.atom(i).pi)
        pending_.push_back(i);
  }

  bool solve() {
    // An odd component of pi atoms can never be perfectly matched.
    std::vector<int> comp(m_.num_atoms(), -1);
    for (int s: pending_) {
      if (comp[s] >= 0)
        continue;
      int size = 0;
      std::vector<int> stack { s };
      comp[s] = s;
      while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        ++size;
        for (const auto &nb: m_.neighbors(a)) {
          if (m_.bond(nb.bond).order != BondOrder::kAromatic)
            continue;
          if (m_.atom(nb.atom).pi && comp[nb.atom] < 0) {
            comp[nb.atom] = s;
            stack.push_back(nb.atom);
          }
        }
      }
      if (size % 2 != 0)
        return false;
    }
    return assign();
  }

  int mate(int i) const { return mate_[i]; }

  int first_unmatched() const {
    for (int i: pending_)
      if (mate_[i] < 0)
        return i;
    return pending_.empty() ? -1 : pending_.front();
  }

private:
  int options(int i, int *first) const {
    int n = 0;
    for (const auto &nb: m_.neighbors(i)) {
      if (m_.bond(nb.bond).order != BondOrder::kAromatic)
        continue;
      if (!m_.atom(nb.atom).pi || mate_[nb.atom] >= 0)
        continue;
      if (n == 0 && first != nullptr)
        *first = nb.atom;
      ++n;
    }
    return n;
  }

  // Most-constrained-first backtracking; aromatic systems are small.
  bool assign() {
    int best = -1, best_n = 1 << 30;
    for (int i: pending_) {
      if (mate_[i] >= 0)
        continue;
      const int n = options(i, nullptr);
      if (n == 0)
        return false;
      if (n < best_n) {
        best_n = n;
        best = i;
      }
    }
    if (best < 0)
      return true;
    for (const auto &nb: m_.neighbors(best)) {
      if (m_.bond(nb.bond).order != BondOrder::kAromatic)
        continue;
      const int j = nb.atom;
      if (!m_.atom(j).pi || mate_[j] >= 0)
        continue;
      mate_[best] = j;
      mate_[j] = best;
      if (assign())
        return true;
      mate_[best] = -1;
      mate_[j] = -1;
    }
    return false;
  }

  const Molecule &m_;
  std::vector<int> mate_;
  std::vector<int> pending_;
};

}  // namespace

bool kekulize(const Molecule &m, std::vector<int> &orders, int *unmatched) {
  orders.assign(m.num_bonds(), 1);
  PiMatcher matcher(m);
  if (!matcher.solve()) {
    if (unmatched != nullptr)
      *unmatched = matcher.first_unmatched();
    return false;
  }
  for (int k = 0; k < m.num_bonds(); ++k) {
    const Bond &b = m.bond(k);
    if (b.order == BondOrder::kAromatic)
      orders[k] = matcher.mate(b.begin) == b.end ? 2 : 1;
    else
      orders[k] = static_cast<int>(b.order);
  }
  return true;
}

}  // namespace modof::chem
