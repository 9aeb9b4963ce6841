//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/chem/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "modof/chem/canon.h"
#include "modof/chem/rings.h"
#include "modof/chem/smiles.h"
#include "modof/util/text.h"

namespace modof::chem {

NodeVocabulary NodeVocabulary::from_descriptors(
    std::vector<std::string> descriptors) {
  std::sort(descriptors.begin(), descriptors.end());
  descriptors.erase(std::unique(descriptors.begin(), descriptors.end()),
                    descriptors.end());
  return from_ordered(descriptors);
}

NodeVocabulary NodeVocabulary::from_ordered(
    const std::vector<std::string> &entries) {
  NodeVocabulary v;
  for (const auto &d: entries) {
    if (v.index_.count(d))
      throw ChemError("duplicate vocabulary entry: " + d);
    NodeTemplate t;
    t.descriptor = d;
    t.mol = parse_fragment_smiles(d);
    if (t.mol.num_atoms() == 1)
      t.kind = NodeKind::kAtom;
    else if (cycle_rank(t.mol) > 0)
      t.kind = NodeKind::kRing;
    else if (t.mol.num_atoms() == 2)
      t.kind = NodeKind::kBond;
    else
      throw ChemError("vocabulary entry is not a ring, bond or atom: " + d);
    t.symmetry = symmetry_classes(t.mol);
    v.index_.emplace(d, v.size());
    v.entries_.push_back(std::move(t));
  }
  return v;
}

NodeVocabulary NodeVocabulary::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ChemError("cannot open vocabulary file: " + path);
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty())
      continue;
    entries.emplace_back(t);
  }
  return from_ordered(entries);
}

void NodeVocabulary::save(const std::string &path) const {
  std::ofstream out(path);
  if (!out)
    throw ChemError("cannot write vocabulary file: " + path);
  for (const auto &e: entries_)
    out << e.descriptor << '\n';
}

std::optional<int> NodeVocabulary::find(const std::string &descriptor) const {
  const auto it = index_.find(descriptor);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

int NodeVocabulary::lookup(const std::string &descriptor) const {
  const auto id = find(descriptor);
  if (!id)
    throw VocabularyMiss(descriptor);
  return *id;
}

std::uint64_t NodeVocabulary::hash() const {
  std::string all;
  for (const auto &e: entries_) {
    all += e.descriptor;
    all += '\n';
  }
  return fnv1a(all);
}

NodeVocabulary build_vocabulary(std::span<const Molecule> mols) {
  std::set<std::string> seen;
  for (const auto &m: mols) {
    const JunctionTree t = decompose(m);
    for (const auto &n: t.nodes)
      seen.insert(node_descriptor(m, n));
  }
  return NodeVocabulary::from_descriptors({ seen.begin(), seen.end() });
}

}  // namespace modof::chem
