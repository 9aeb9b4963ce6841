//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/props/crippen.h"

#include <map>

namespace modof::props {
namespace {

using chem::BondOrder;
using chem::Element;
using chem::Molecule;

const std::map<std::string, double> &table() {
  static const std::map<std::string, double> t = {
    { "C1", 0.1441 },   { "C2", 0.0 },       { "C3", -0.2035 },
    { "C4", -0.2051 },  { "C5", -0.2783 },   { "C6", 0.1551 },
    { "C7", 0.0017 },   { "C8", 0.08452 },   { "C9", -0.1444 },
    { "C10", -0.0516 }, { "C11", 0.1193 },   { "C12", -0.0967 },
    { "C13", -0.5443 }, { "C14", 0.0 },      { "C15", 0.245 },
    { "C16", 0.198 },   { "C17", 0.0 },      { "C18", 0.1581 },
    { "C19", 0.2955 },  { "C20", 0.2713 },   { "C21", 0.136 },
    { "C22", 0.4619 },  { "C23", 0.5437 },   { "C24", 0.1893 },
    { "C25", -0.8186 }, { "C26", 0.264 },    { "C27", 0.2148 },
    { "CS", 0.08129 },  { "H1", 0.123 },     { "H2", -0.2677 },
    { "H3", 0.2142 },   { "H4", 0.298 },     { "HS", 0.1125 },
    { "N1", -1.019 },   { "N2", -0.7096 },   { "N3", -1.027 },
    { "N4", -0.5188 },  { "N5", 0.08387 },   { "N6", 0.1836 },
    { "N7", -0.3187 },  { "N8", -0.4458 },   { "N9", 0.01508 },
    { "N10", -1.95 },   { "N11", -0.3239 },  { "N12", -1.119 },
    { "N13", -0.3396 }, { "N14", 0.2887 },   { "NS", -0.4806 },
    { "O1", 0.1552 },   { "O2", -0.2893 },   { "O3", -0.0684 },
    { "O4", -0.4195 },  { "O5", 0.0335 },    { "O6", -0.3339 },
    { "O7", -1.189 },   { "O8", 0.1788 },    { "O9", -0.1526 },
    { "O10", 0.1129 },  { "O11", 0.4833 },   { "O12", -1.326 },
    { "OS", -0.1188 },  { "F", 0.4202 },     { "Cl", 0.6895 },
    { "Br", 0.8456 },   { "I", 0.8857 },     { "Hal", -2.996 },
    { "P", 0.8612 },    { "S1", 0.6482 },    { "S2", -0.0024 },
    { "S3", 0.6237 },   { "Me1", -0.3808 },
  };
  return t;
}

struct Nb {
  int atom;
  Element el;
  bool arom;
  BondOrder order;
};

class Typer {
public:
  explicit Typer(const Molecule &m): m_(m) { }

  std::string heavy(int i) const {
    switch (m_.atom(i).element) {
    case Element::kC:
      return carbon(i);
    case Element::kN:
      return nitrogen(i);
    case Element::kO:
      return oxygen(i);
    case Element::kF:
      return m_.atom(i).charge == 0 ? "F" : "Hal";
    case Element::kCl:
      return m_.atom(i).charge == 0 ? "Cl" : "Hal";
    case Element::kBr:
      return m_.atom(i).charge == 0 ? "Br" : "Hal";
    case Element::kI:
      return m_.atom(i).charge == 0 ? "I" : "Hal";
    case Element::kP:
      return "P";
    case Element::kS:
      if (m_.atom(i).aromatic)
        return "S3";
      return m_.atom(i).charge == 0 ? "S1" : "S2";
    case Element::kB:
    case Element::kSi:
      return "Me1";
    case Element::kH:
      return hydrogen_on(i, true);
    }
    throw CrippenError(i, "no Crippen type");
  }

  /// Class of a hydrogen bound to heavy atom i.
  std::string hydrogen_on(int i, bool explicit_h = false) const {
    const Element e = m_.atom(i).element;
    if (explicit_h) {
      // Explicit hydrogen atom: classify by its own neighbor.
      const auto nbs = m_.neighbors(i);
      if (nbs.empty())
        return "HS";
      return hydrogen_on(nbs[0].atom);
    }
    if (e == Element::kC || e == Element::kH)
      return "H1";
    if (e == Element::kO) {
      const auto nbs = heavy_nbs(i);
      const bool water_like = m_.hydrogens(i) >= 2;
      for (const auto &n: nbs) {
        if (n.el == Element::kC && !n.arom && total_x(n.atom) == 4)
          return "H2";
        if (n.el == Element::kC && n.arom)
          return "H2";
        if (n.el != Element::kC && n.el != Element::kN && n.el != Element::kO
            && n.el != Element::kS)
          return "H2";
      }
      if (water_like)
        return "H2";
      for (const auto &n: nbs)
        if (n.el == Element::kN)
          return "H3";
      for (const auto &n: nbs) {
        if (n.el == Element::kC && !n.arom) {
          for (const auto &x: heavy_nbs(n.atom))
            if (x.atom != i && x.order == BondOrder::kDouble
                && (x.el == Element::kC || x.el == Element::kN
                    || x.el == Element::kO || x.el == Element::kS))
              return "H4";
        }
        if (n.el == Element::kO || n.el == Element::kS)
          return "H4";
      }
      return "HS";
    }
    if (e == Element::kN)
      return "H3";
    return "H2";
  }

private:
  std::vector<Nb> heavy_nbs(int i) const {
    std::vector<Nb> out;
    for (const auto &nb: m_.neighbors(i)) {
      const auto &a = m_.atom(nb.atom);
      out.push_back({ nb.atom, a.element, a.aromatic,
                      m_.bond(nb.bond).order });
    }
    return out;
  }

  int total_x(int i) const { return m_.degree(i) + m_.hydrogens(i); }

  static bool hetero(Element e) {
    return e == Element::kN || e == Element::kO || e == Element::kP
           || e == Element::kS || e == Element::kF || e == Element::kCl
           || e == Element::kBr || e == Element::kI;
  }

  static bool cnos_hal(Element e) {
    return e == Element::kC || hetero(e);
  }

  std::string carbon(int i) const {
    const auto nbs = heavy_nbs(i);
    const int h = m_.hydrogens(i);
    const int x = total_x(i);
    if (m_.atom(i).aromatic)
      return aromatic_carbon(i, nbs, h);

    int ali_c = 0, ali_het = 0, ali_heavy = 0, arom = 0;
    bool dbl_c = false, dbl_ali_nonc = false, dbl_arom = false,
         triple = false, all_single = true, exotic = false;
    for (const auto &n: nbs) {
      if (n.order != BondOrder::kSingle)
        all_single = false;
      if (n.arom)
        ++arom;
      else {
        ++ali_heavy;
        if (n.el == Element::kC)
          ++ali_c;
        if (hetero(n.el))
          ++ali_het;
        if (!cnos_hal(n.el))
          exotic = true;
      }
      if (n.order == BondOrder::kDouble) {
        if (n.arom)
          dbl_arom = true;
        else if (n.el == Element::kC)
          dbl_c = true;
        else
          dbl_ali_nonc = true;
      }
      if (n.order == BondOrder::kTriple)
        triple = true;
    }
    const int deg = static_cast<int>(nbs.size());
    if (all_single && arom == 0) {
      if (h == 4)
        return "C1";
      if (h == 3 && ali_c == 1)
        return "C1";
      if (h == 2 && deg == 2 && ali_c == 2)
        return "C1";
      if (h == 1 && deg == 3 && ali_c == 3)
        return "C2";
      if (h == 0 && deg == 4 && ali_c == 4)
        return "C2";
      if (h == 3 && ali_het == 1)
        return "C3";
      if (h == 2 && x == 4 && ali_het >= 1 && ali_heavy == 2)
        return "C3";
      if (h <= 1 && x == 4 && ali_het >= 1 && ali_heavy >= 2)
        return "C4";
    }
    if (dbl_ali_nonc)
      return "C5";
    if (dbl_c && arom == 0)
      return "C6";
    if (triple && x == 2)
      return "C7";
    if (all_single && arom > 0) {
      bool on_c = false;
      for (const auto &n: nbs)
        on_c = on_c || (n.arom && n.el == Element::kC);
      if (h == 3 && on_c)
        return "C8";
      if (h == 3)
        return "C9";
      if (h == 2 && x == 4)
        return "C10";
      if (h == 1 && x == 4)
        return "C11";
      if (h == 0 && x == 4)
        return "C12";
    }
    if ((dbl_c && arom > 0) || dbl_arom)
      return "C26";
    if (x == 4 && exotic)
      return "C27";
    return "CS";
  }

  std::string aromatic_carbon(int i, const std::vector<Nb> &nbs,
                              int h) const {
    int arom_bonds = 0;
    for (const auto &n: nbs)
      if (n.order == BondOrder::kAromatic)
        ++arom_bonds;
    for (const auto &n: nbs)
      if (n.order == BondOrder::kSingle && !n.arom && !cnos_hal(n.el)
          && h == 0)
        return "C13";
    for (const auto &n: nbs) {
      if (n.order == BondOrder::kAromatic)
        continue;
      if (n.el == Element::kF)
        return "C14";
      if (n.el == Element::kCl)
        return "C15";
      if (n.el == Element::kBr)
        return "C16";
      if (n.el == Element::kI)
        return "C17";
    }
    if (h >= 1)
      return "C18";
    if (arom_bonds >= 3)
      return "C19";
    if (arom_bonds == 2) {
      for (const auto &n: nbs) {
        if (n.order == BondOrder::kSingle) {
          if (n.arom)
            return "C20";
          if (n.el == Element::kC)
            return "C21";
          if (n.el == Element::kN)
            return "C22";
          if (n.el == Element::kO)
            return "C23";
          if (n.el == Element::kS)
            return "C24";
        }
        if (n.order == BondOrder::kDouble && !n.arom
            && (n.el == Element::kC || n.el == Element::kN
                || n.el == Element::kO))
          return "C25";
      }
    }
    (void)i;
    return "CS";
  }

  std::string nitrogen(int i) const {
    const auto &a = m_.atom(i);
    const auto nbs = heavy_nbs(i);
    const int h = m_.hydrogens(i);
    if (a.aromatic)
      return a.charge > 0 ? "N12" : (a.charge == 0 ? "N11" : "NS");
    if (a.charge > 0 && h >= 1)
      return "N10";
    if (a.charge != 0)
      return h == 0 ? "N13" : "N14";
    int ali = 0, arom = 0;
    bool dbl = false, triple = false;
    for (const auto &n: nbs) {
      if (n.arom)
        ++arom;
      else
        ++ali;
      dbl = dbl || n.order == BondOrder::kDouble;
      triple = triple || n.order == BondOrder::kTriple;
    }
    const int deg = static_cast<int>(nbs.size());
    if (!dbl && !triple) {
      if (h == 2 && deg == 1)
        return ali == 1 ? "N1" : "N3";
      if (h == 1 && deg == 2)
        return arom == 0 ? "N2" : "N4";
      if (h == 0 && deg == 3)
        return arom == 0 ? "N7" : "N8";
    }
    if (dbl && h == 1)
      return "N5";
    if (dbl && h == 0 && deg == 2)
      return "N6";
    if (triple)
      return "N9";
    return "NS";
  }

  std::string oxygen(int i) const {
    const auto &a = m_.atom(i);
    const auto nbs = heavy_nbs(i);
    const int h = m_.hydrogens(i);
    if (a.aromatic)
      return "O1";
    if (h == 1 || h == 2)
      return "O2";
    if (nbs.size() == 2 && nbs[0].order == BondOrder::kSingle
        && nbs[1].order == BondOrder::kSingle) {
      if (!nbs[0].arom && !nbs[1].arom)
        return "O3";
      return "O4";
    }
    if (nbs.size() != 1)
      return "OS";
    const Nb &n = nbs[0];
    if (n.order == BondOrder::kDouble
        && (n.el == Element::kN || n.el == Element::kO))
      return "O5";
    if (a.charge < 0 && n.el == Element::kN)
      return "O5";
    if (a.charge < 0 && n.el == Element::kS)
      return "O6";
    if (a.charge < 0 && !carboxylate_carbon(n.atom))
      return "O7";
    if (n.order == BondOrder::kDouble && n.arom)
      return "O8";
    if (n.order == BondOrder::kDouble && n.el == Element::kC) {
      const int hc = m_.hydrogens(n.atom);
      std::vector<Nb> others;
      for (const auto &x: heavy_nbs(n.atom))
        if (x.atom != i)
          others.push_back(x);
      auto is_el = [](const Nb &x, Element e, bool arom) {
        return x.el == e && x.arom == arom;
      };
      // Aliphatic carbonyl.
      if (hc == 1 && others.size() == 1
          && (is_el(others[0], Element::kC, false)
              || is_el(others[0], Element::kN, false)
              || is_el(others[0], Element::kO, false)))
        return "O9";
      if (others.size() == 2) {
        const bool c0 = is_el(others[0], Element::kC, false);
        const bool c1 = is_el(others[1], Element::kC, false);
        if ((c0 && !others[1].arom) || (c1 && !others[0].arom))
          return "O9";
      }
      if (hc == 2)
        return "O9";
      if (others.size() == 1 && others[0].order == BondOrder::kDouble
          && others[0].el == Element::kO)
        return "O9";
      // Aromatic carbonyl.
      if (hc == 1 && others.size() == 1 && is_el(others[0], Element::kC, true))
        return "O10";
      if (others.size() == 2) {
        for (int k = 0; k < 2; ++k) {
          const Nb &p = others[k], &q = others[1 - k];
          if (p.el == Element::kC && q.arom)
            return "O10";
          if (is_el(p, Element::kC, true) && !q.arom)
            return "O10";
        }
        if (others[0].el != Element::kC && others[1].el != Element::kC)
          return "O11";
      }
    }
    if (a.charge < 0 && n.el == Element::kC)
      return "O12";
    return "OS";
  }

  bool carboxylate_carbon(int c) const {
    if (m_.atom(c).element != Element::kC || m_.atom(c).aromatic)
      return false;
    for (const auto &x: heavy_nbs(c))
      if (x.el == Element::kO && x.order == BondOrder::kDouble)
        return true;
    return false;
  }

  const Molecule &m_;
};

}  // namespace

std::vector<CrippenAtom> crippen_atom_types(const chem::Molecule &m) {
  Typer typer(m);
  std::vector<CrippenAtom> out;
  out.reserve(m.num_atoms());
  for (int i = 0; i < m.num_atoms(); ++i) {
    CrippenAtom c;
    c.type = typer.heavy(i);
    c.contribution = table().at(c.type);
    c.hydrogens = m.hydrogens(i);
    if (c.hydrogens > 0) {
      c.h_type = typer.hydrogen_on(i);
      c.h_contribution = table().at(c.h_type);
    } else {
      c.h_contribution = 0.0;
    }
    out.push_back(std::move(c));
  }
  return out;
}

double crippen_logp(const chem::Molecule &m) {
  double s = 0.0;
  for (const auto &c: crippen_atom_types(m))
    s += c.contribution + c.hydrogens * c.h_contribution;
  return s;
}

}  // namespace modof::props
