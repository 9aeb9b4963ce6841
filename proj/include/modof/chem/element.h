//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_ELEMENT_H_
#define MODOF_CHEM_ELEMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace modof::chem {

enum class Element : std::uint8_t {
  kH = 1,
  kB = 5,
  kC = 6,
  kN = 7,
  kO = 8,
  kF = 9,
  kSi = 14,
  kP = 15,
  kS = 16,
  kCl = 17,
  kBr = 35,
  kI = 53,
};

inline constexpr Element kAllElements[] = {
  Element::kH,  Element::kB, Element::kC, Element::kN,
  Element::kO,  Element::kF, Element::kSi, Element::kP,
  Element::kS,  Element::kCl, Element::kBr, Element::kI,
};
inline constexpr int kNumElements = 12;
inline constexpr int kMinCharge = -2;
inline constexpr int kMaxCharge = 2;

int atomic_number(Element e);
/// Dense index in [0, kNumElements), in the order of kAllElements.
int element_index(Element e);
std::string_view symbol(Element e);
std::optional<Element> element_from_symbol(std::string_view sym);

/// True for the SMILES organic subset (B C N O P S F Cl Br I).
bool is_organic_subset(Element e);
/// True if the element may be written as a lowercase aromatic symbol.
bool can_be_aromatic(Element e);

/// Allowed total valences (bond orders + hydrogens) for an element in the
/// given charge state, ascending. Charged atoms use the valences of the
/// isoelectronic neutral element of the same period (N+ like C, O- like F).
std::span<const int> allowed_valences(Element e, int charge);

/// Largest allowed valence, or -1 when the state has none.
int max_valence(Element e, int charge);

/// Smallest allowed valence that is >= v, or -1.
int lowest_valence_at_least(Element e, int charge, int v);

inline bool valence_allowed(Element e, int charge, int v) {
  for (int x: allowed_valences(e, charge))
    if (x == v)
      return true;
  return false;
}

}  // namespace modof::chem

#endif  // MODOF_CHEM_ELEMENT_H_
