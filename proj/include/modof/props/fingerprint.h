//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PROPS_FINGERPRINT_H_
#define MODOF_PROPS_FINGERPRINT_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "modof/chem/molecule.h"

namespace modof::props {

class FingerprintError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class Fingerprint {
public:
  Fingerprint() = default;
  Fingerprint(int nbits, int radius);

  int nbits() const { return nbits_; }
  int radius() const { return radius_; }
  bool test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1U; }
  void set(int bit) { words_[bit >> 6] |= std::uint64_t{ 1 } << (bit & 63); }
  int popcount() const;
  std::vector<int> on_bits() const;
  const std::vector<std::uint64_t> &words() const { return words_; }

  bool operator==(const Fingerprint &) const = default;

private:
  int nbits_ = 0;
  int radius_ = 0;
  std::vector<std::uint64_t> words_;
};

/// One circular environment: the atom it is centered on, its layer and its
/// 64-bit invariant.
struct Environment {
  int atom;
  int layer;
  std::uint64_t invariant;
};

/// Unique circular environments up to `radius`. Layer-0 invariants hash
/// (element, charge, degree, hydrogens, ring membership); each further layer
/// hashes the previous invariant with the sorted (bond order, neighbor
/// invariant) pairs. An environment is kept only if its bond set is new.
std::vector<Environment> morgan_environments(const chem::Molecule &m,
                                             int radius);

/// Folded bit vector of morgan_environments; `nbits` must be a power of two.
Fingerprint morgan_fp(const chem::Molecule &m, int radius = 2,
                      int nbits = 2048);

/// |a AND b| / |a OR b|, 1 when both are empty. Throws on width mismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

/// Tanimoto of default Morgan fingerprints.
double similarity(const chem::Molecule &a, const chem::Molecule &b);

}  // namespace modof::props

#endif  // MODOF_PROPS_FINGERPRINT_H_
