//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "modof/chem/rings.h"
#include "modof/chem/smiles.h"

namespace modof::chem {
namespace {

struct ParsedAtom {
  std::size_t offset;
  bool bracket;
  int hcount;
};

struct OpenRing {
  int atom;
  char bond;
  std::size_t offset;
};

class SmilesParser {
public:
  SmilesParser(std::string_view text, bool check_kekule)
      : s_(text), check_kekule_(check_kekule) { }

  Molecule parse() {
    if (s_.empty())
      throw SmilesError(SmilesErrorKind::kSyntax, 0, "empty SMILES");

    int prev = -1;
    char pending = 0;
    std::size_t pending_at = 0;
    std::vector<int> branch_stack;
    std::vector<std::size_t> branch_offsets;

    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') {
        if (prev < 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                            "branch without preceding atom");
        branch_stack.push_back(prev);
        branch_offsets.push_back(pos_);
        ++pos_;
      } else if (c == ')') {
        if (branch_stack.empty())
          throw SmilesError(SmilesErrorKind::kUnbalancedParens, pos_,
                            "unmatched ')'");
        if (pending != 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pending_at,
                            "dangling bond symbol");
        prev = branch_stack.back();
        branch_stack.pop_back();
        branch_offsets.pop_back();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/'
                 || c == '\\') {
        if (pending != 0 || prev < 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                            "unexpected bond symbol");
        pending = c;
        pending_at = pos_;
        ++pos_;
      } else if (c == '.') {
        if (pending != 0 || prev < 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                            "unexpected '.'");
        prev = -1;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                            "ring closure without atom");
        const std::size_t at = pos_;
        const int num = ring_number();
        auto it = rings_.find(num);
        if (it == rings_.end()) {
          rings_[num] = { prev, pending, at };
        } else {
          const OpenRing open = it->second;
          rings_.erase(it);
          char sym = pending;
          if (sym != 0 && open.bond != 0 && sym != open.bond
              && !(is_single(sym) && is_single(open.bond)))
            throw SmilesError(SmilesErrorKind::kSyntax, at,
                              "conflicting ring-closure bond symbols");
          if (sym == 0)
            sym = open.bond;
          if (open.atom == prev || mol_.find_bond(open.atom, prev) >= 0)
            throw SmilesError(SmilesErrorKind::kSyntax, at,
                              "invalid ring closure");
          note_implicit(sym, mol_.add_bond(open.atom, prev,
                                           bond_order(sym, open.atom, prev)));
        }
        pending = 0;
      } else {
        const int a = parse_atom();
        if (prev >= 0)
          note_implicit(pending, mol_.add_bond(prev, a,
                                               bond_order(pending, prev, a)));
        else if (pending != 0)
          throw SmilesError(SmilesErrorKind::kSyntax, pending_at,
                            "bond symbol without preceding atom");
        pending = 0;
        prev = a;
      }
    }
    if (pending != 0)
      throw SmilesError(SmilesErrorKind::kSyntax, pending_at,
                        "dangling bond symbol");
    if (!branch_stack.empty())
      throw SmilesError(SmilesErrorKind::kUnbalancedParens,
                        branch_offsets.back(), "unclosed '('");
    if (!rings_.empty())
      throw SmilesError(SmilesErrorKind::kUnclosedRing,
                        rings_.begin()->second.offset, "unclosed ring bond");
    finish();
    return std::move(mol_);
  }

private:
  static bool is_single(char c) { return c == '-' || c == '/' || c == '\\'; }

  BondOrder bond_order(char sym, int a, int b) const {
    switch (sym) {
    case '=':
      return BondOrder::kDouble;
    case '#':
      return BondOrder::kTriple;
    case ':':
      return BondOrder::kAromatic;
    case '-':
    case '/':
    case '\\':
      return BondOrder::kSingle;
    default:
      return mol_.atom(a).aromatic && mol_.atom(b).aromatic
                 ? BondOrder::kAromatic
                 : BondOrder::kSingle;
    }
  }

  int ring_number() {
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size()
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                          "malformed %nn ring closure");
      const int n = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
      return n;
    }
    return s_[pos_++] - '0';
  }

  int parse_atom() {
    const std::size_t at = pos_;
    if (s_[pos_] == '[')
      return parse_bracket();

    Atom atom;
    const char c = s_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      const auto e = aromatic_symbol(c);
      if (!e)
        throw SmilesError(SmilesErrorKind::kUnsupportedElement, at,
                          std::string("unsupported aromatic atom '") + c
                              + "'");
      atom.element = *e;
      atom.aromatic = true;
      ++pos_;
    } else {
      std::optional<Element> e;
      if (c == 'C' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'l') {
        e = Element::kCl;
        pos_ += 2;
      } else if (c == 'B' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'r') {
        e = Element::kBr;
        pos_ += 2;
      } else {
        const auto one = element_from_symbol(std::string_view(&s_[pos_], 1));
        if (one && is_organic_subset(*one)) {
          e = one;
          ++pos_;
        }
      }
      if (!e) {
        if (std::isalpha(static_cast<unsigned char>(c)))
          throw SmilesError(SmilesErrorKind::kUnsupportedElement, at,
                            std::string("unsupported element '") + c + "'");
        throw SmilesError(SmilesErrorKind::kSyntax, at,
                          std::string("unexpected character '") + c + "'");
      }
      atom.element = *e;
    }
    const int idx = mol_.add_atom(atom);
    info_.push_back({ at, false, 0 });
    return idx;
  }

  static std::optional<Element> aromatic_symbol(char c) {
    switch (c) {
    case 'b':
      return Element::kB;
    case 'c':
      return Element::kC;
    case 'n':
      return Element::kN;
    case 'o':
      return Element::kO;
    case 'p':
      return Element::kP;
    case 's':
      return Element::kS;
    default:
      return std::nullopt;
    }
  }

  int parse_bracket() {
    const std::size_t at = pos_;
    ++pos_;
    auto peek = [&]() -> char { return pos_ < s_.size() ? s_[pos_] : '\0'; };

    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;  // isotope, dropped

    Atom atom;
    const char c0 = peek();
    if (std::islower(static_cast<unsigned char>(c0))) {
      if (std::islower(static_cast<unsigned char>(
              pos_ + 1 < s_.size() ? s_[pos_ + 1] : 'X')))
        throw SmilesError(SmilesErrorKind::kUnsupportedElement, pos_,
                          "unsupported aromatic element");
      const auto e = aromatic_symbol(c0);
      if (!e)
        throw SmilesError(SmilesErrorKind::kUnsupportedElement, pos_,
                          std::string("unsupported aromatic atom '") + c0
                              + "'");
      atom.element = *e;
      atom.aromatic = true;
      ++pos_;
    } else if (std::isupper(static_cast<unsigned char>(c0))) {
      std::optional<Element> e;
      std::string sym(1, c0);
      if (pos_ + 1 < s_.size()
          && std::islower(static_cast<unsigned char>(s_[pos_ + 1]))) {
        sym.push_back(s_[pos_ + 1]);
        e = element_from_symbol(sym);
        if (!e)
          throw SmilesError(SmilesErrorKind::kUnsupportedElement, pos_,
                            "unsupported element '" + sym + "'");
        pos_ += 2;
      } else {
        e = element_from_symbol(sym);
        if (!e)
          throw SmilesError(SmilesErrorKind::kUnsupportedElement, pos_,
                            "unsupported element '" + sym + "'");
        ++pos_;
      }
      atom.element = *e;
    } else {
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "expected element symbol in bracket atom");
    }

    // Stereo: @, @@, @TH1, @SP2, @OH12 ... all discarded.
    while (peek() == '@') {
      ++pos_;
      if (pos_ + 1 < s_.size() && std::isupper(static_cast<unsigned char>(s_[pos_]))
          && std::isupper(static_cast<unsigned char>(s_[pos_ + 1]))
          && s_[pos_] != 'H') {
        pos_ += 2;
        while (std::isdigit(static_cast<unsigned char>(peek())))
          ++pos_;
      }
    }

    int hcount = 0;
    if (peek() == 'H') {
      ++pos_;
      hcount = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        hcount = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())))
          hcount = hcount * 10 + (s_[pos_++] - '0');
      }
    }

    int charge = 0;
    if (peek() == '+' || peek() == '-') {
      const char sign = s_[pos_++];
      int mag = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        mag = 0;
        while (std::isdigit(static_cast<unsigned char>(peek())))
          mag = mag * 10 + (s_[pos_++] - '0');
      } else {
        while (peek() == sign) {
          ++mag;
          ++pos_;
        }
      }
      charge = sign == '+' ? mag : -mag;
      if (charge < kMinCharge || charge > kMaxCharge)
        throw SmilesError(SmilesErrorKind::kSyntax, at,
                          "formal charge out of range");
    }
    atom.charge = charge;

    if (peek() == ':') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                          "atom map without number");
      int map = 0;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        map = map * 10 + (s_[pos_++] - '0');
      atom.atom_map = map;
    }
    if (peek() != ']')
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "expected ']' to close bracket atom");
    ++pos_;

    const int idx = mol_.add_atom(atom);
    info_.push_back({ at, true, hcount });
    return idx;
  }

  void note_implicit(char sym, int bond) {
    if (sym == 0 && mol_.bond(bond).order == BondOrder::kAromatic)
      implicit_aromatic_.push_back(bond);
  }

  void finish() {
    // Unmarked bonds between aromatic atoms are aromatic only inside rings.
    if (!implicit_aromatic_.empty()) {
      const auto in_ring = ring_bond_flags(mol_);
      for (int k: implicit_aromatic_)
        if (!in_ring[k])
          mol_.set_bond_order(k, BondOrder::kSingle);
    }
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      Atom &a = mol_.mutable_atom(i);
      const ParsedAtom &p = info_[i];
      if (a.aromatic && !can_be_aromatic(a.element))
        throw SmilesError(SmilesErrorKind::kUnsupportedElement, p.offset,
                          "element cannot be aromatic");
      a.pi = infer_pi(mol_, i, p.bracket ? p.hcount : 0);
    }
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      const ParsedAtom &p = info_[i];
      if (!p.bracket)
        continue;
      if (mol_.hydrogens(i) != p.hcount)
        mol_.mutable_atom(i).fixed_h = p.hcount;
    }
    std::vector<int> orders;
    int bad = -1;
    if (check_kekule_ && !kekulize(mol_, orders, &bad))
      throw SmilesError(SmilesErrorKind::kNotKekulizable,
                        bad >= 0 ? info_[bad].offset : 0,
                        "aromatic system cannot be kekulized");
  }

  std::string_view s_;
  bool check_kekule_;
  std::size_t pos_ = 0;
  Molecule mol_;
  std::vector<ParsedAtom> info_;
  std::vector<int> implicit_aromatic_;
  std::map<int, OpenRing> rings_;
};

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text, true).parse();
}

Molecule parse_fragment_smiles(std::string_view text) {
  return SmilesParser(text, false).parse();
}

}  // namespace modof::chem
