//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/props/fingerprint.h"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>

#include "modof/chem/rings.h"
#include "modof/util/text.h"

namespace modof::props {
namespace {

std::uint64_t hash_words(const std::vector<std::int64_t> &v) {
  std::uint64_t h = kFnvOffset;
  for (std::int64_t x: v) {
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b)
      bytes[b] = static_cast<unsigned char>(static_cast<std::uint64_t>(x)
                                            >> (8 * b));
    h = fnv1a(bytes, 8, h);
  }
  return h;
}

}  // namespace

Fingerprint::Fingerprint(int nbits, int radius)
    : nbits_(nbits), radius_(radius) {
  if (nbits <= 0 || !std::has_single_bit(static_cast<unsigned>(nbits)))
    throw FingerprintError("fingerprint width must be a power of two");
  words_.assign((nbits + 63) / 64, 0);
}

int Fingerprint::popcount() const {
  int n = 0;
  for (auto w: words_)
    n += std::popcount(w);
  return n;
}

std::vector<int> Fingerprint::on_bits() const {
  std::vector<int> out;
  for (int i = 0; i < nbits_; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

std::vector<Environment> morgan_environments(const chem::Molecule &m,
                                             int radius) {
  const int n = m.num_atoms();
  const auto in_ring = chem::ring_atom_flags(m);
  std::vector<std::uint64_t> inv(n);
  std::vector<Environment> out;
  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> bonds(n, std::vector<bool>(m.num_bonds()));
  for (int i = 0; i < n; ++i) {
    const chem::Atom &a = m.atom(i);
    inv[i] = hash_words({ chem::atomic_number(a.element), a.charge,
                          m.degree(i), m.hydrogens(i), in_ring[i] ? 1 : 0 });
    out.push_back({ i, 0, inv[i] });
  }
  // Layer-0 environments all have an empty bond set but are distinct by
  // atom; identical invariants collapse when folded anyway.
  for (int layer = 1; layer <= radius; ++layer) {
    std::vector<std::uint64_t> next(n);
    std::vector<std::vector<bool>> next_bonds(n);
    std::vector<std::tuple<std::vector<bool>, std::uint64_t, int>> cands;
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::int64_t, std::int64_t>> nbs;
      next_bonds[i] = bonds[i];
      for (const auto &nb: m.neighbors(i)) {
        nbs.emplace_back(static_cast<std::int64_t>(m.bond(nb.bond).order),
                         static_cast<std::int64_t>(inv[nb.atom]));
        next_bonds[i][nb.bond] = true;
        for (int k = 0; k < m.num_bonds(); ++k)
          if (bonds[nb.atom][k])
            next_bonds[i][k] = true;
      }
      std::sort(nbs.begin(), nbs.end());
      std::vector<std::int64_t> words{ layer,
                                       static_cast<std::int64_t>(inv[i]) };
      for (const auto &[o, v]: nbs) {
        words.push_back(o);
        words.push_back(v);
      }
      next[i] = hash_words(words);
      if (next_bonds[i] != bonds[i])
        cands.emplace_back(next_bonds[i], next[i], i);
    }
    std::sort(cands.begin(), cands.end());
    for (const auto &[bs, h, atom]: cands)
      if (seen.insert(bs).second)
        out.push_back({ atom, layer, h });
    inv = std::move(next);
    bonds = std::move(next_bonds);
  }
  return out;
}

Fingerprint morgan_fp(const chem::Molecule &m, int radius, int nbits) {
  Fingerprint fp(nbits, radius);
  for (const auto &e: morgan_environments(m, radius))
    fp.set(static_cast<int>(e.invariant & static_cast<std::uint64_t>(nbits - 1)));
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.nbits() != b.nbits())
    throw FingerprintError("fingerprint widths differ");
  int inter = 0, uni = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    inter += std::popcount(a.words()[w] & b.words()[w]);
    uni += std::popcount(a.words()[w] | b.words()[w]);
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
}

double similarity(const chem::Molecule &a, const chem::Molecule &b) {
  return tanimoto(morgan_fp(a), morgan_fp(b));
}

}  // namespace modof::props
