//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/element.h"

#include <array>

namespace modof::chem {
namespace {

struct ElementInfo {
  Element element;
  std::string_view symbol;
  int valence_electrons;
  int period;
};

constexpr std::array<ElementInfo, kNumElements> kInfo = { {
  { Element::kH, "H", 1, 1 },
  { Element::kB, "B", 3, 2 },
  { Element::kC, "C", 4, 2 },
  { Element::kN, "N", 5, 2 },
  { Element::kO, "O", 6, 2 },
  { Element::kF, "F", 7, 2 },
  { Element::kSi, "Si", 4, 3 },
  { Element::kP, "P", 5, 3 },
  { Element::kS, "S", 6, 3 },
  { Element::kCl, "Cl", 7, 3 },
  { Element::kBr, "Br", 7, 4 },
  { Element::kI, "I", 7, 5 },
} };

// Valence lists indexed by effective valence-electron count.
constexpr int kV0[] = { 0 };
constexpr int kV1[] = { 1 };
constexpr int kV2[] = { 2 };
constexpr int kV3[] = { 3 };
constexpr int kV4[] = { 4 };
constexpr int kV35[] = { 3, 5 };
constexpr int kV246[] = { 2, 4, 6 };

const ElementInfo &info(Element e) {
  for (const auto &i: kInfo)
    if (i.element == e)
      return i;
  return kInfo[2];
}

}  // namespace

int atomic_number(Element e) {
  return static_cast<int>(e);
}

int element_index(Element e) {
  for (int i = 0; i < kNumElements; ++i)
    if (kAllElements[i] == e)
      return i;
  return -1;
}

std::string_view symbol(Element e) {
  return info(e).symbol;
}

std::optional<Element> element_from_symbol(std::string_view sym) {
  for (const auto &i: kInfo)
    if (i.symbol == sym)
      return i.element;
  return std::nullopt;
}

bool is_organic_subset(Element e) {
  switch (e) {
  case Element::kB:
  case Element::kC:
  case Element::kN:
  case Element::kO:
  case Element::kP:
  case Element::kS:
  case Element::kF:
  case Element::kCl:
  case Element::kBr:
  case Element::kI:
    return true;
  default:
    return false;
  }
}

bool can_be_aromatic(Element e) {
  switch (e) {
  case Element::kB:
  case Element::kC:
  case Element::kN:
  case Element::kO:
  case Element::kP:
  case Element::kS:
    return true;
  default:
    return false;
  }
}

std::span<const int> allowed_valences(Element e, int charge) {
  const auto &i = info(e);
  if (e == Element::kH)
    return charge == 0 ? std::span<const int>(kV1) : std::span<const int>(kV0);

  // Cations lose, anions gain one electron per unit charge; boron-group
  // anions (B-) become carbon-like, nitrogen cations become carbon-like.
  int ve = i.valence_electrons - charge;
  const bool hypervalent = i.period >= 3;
  switch (ve) {
  case 3:
    return kV3;
  case 4:
    return kV4;
  case 5:
    return hypervalent ? std::span<const int>(kV35) : std::span<const int>(kV3);
  case 6:
    return hypervalent ? std::span<const int>(kV246)
                       : std::span<const int>(kV2);
  case 7:
    return kV1;
  case 8:
    return kV0;
  case 2:
    return kV2;
  default:
    return {};
  }
}

int max_valence(Element e, int charge) {
  auto v = allowed_valences(e, charge);
  return v.empty() ? -1 : v.back();
}

int lowest_valence_at_least(Element e, int charge, int v) {
  for (int x: allowed_valences(e, charge))
    if (x >= v)
      return x;
  return -1;
}

}  // namespace modof::chem
