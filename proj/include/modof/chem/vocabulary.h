//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_CHEM_VOCABULARY_H_
#define MODOF_CHEM_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "modof/chem/junction_tree.h"
#include "modof/chem/molecule.h"

namespace modof::chem {

class VocabularyMiss: public ChemError {
public:
  explicit VocabularyMiss(std::string descriptor)
      : ChemError("fragment not in vocabulary: " + descriptor),
        descriptor_(std::move(descriptor)) { }

  const std::string &descriptor() const { return descriptor_; }

private:
  std::string descriptor_;
};

struct NodeTemplate {
  std::string descriptor;
  Molecule mol;
  NodeKind kind = NodeKind::kBond;
  /// Symmetry class per template atom.
  std::vector<int> symmetry;
};

class NodeVocabulary {
public:
  NodeVocabulary() = default;

  /// Sorted, de-duplicated vocabulary; type ids follow the sorted order.
  static NodeVocabulary from_descriptors(std::vector<std::string> descriptors);

  /// Keeps the given order (type id = position). Throws ChemError on
  /// duplicates or unparsable entries.
  static NodeVocabulary from_ordered(const std::vector<std::string> &entries);

  /// One descriptor per line; line number = type id.
  static NodeVocabulary load(const std::string &path);
  void save(const std::string &path) const;

  int size() const { return static_cast<int>(entries_.size()); }
  const NodeTemplate &at(int type_id) const { return entries_[type_id]; }
  std::optional<int> find(const std::string &descriptor) const;
  /// Throws VocabularyMiss.
  int lookup(const std::string &descriptor) const;

  /// FNV-1a over the newline-joined descriptors.
  std::uint64_t hash() const;

private:
  std::vector<NodeTemplate> entries_;
  std::unordered_map<std::string, int> index_;
};

/// Vocabulary closed over the tree nodes of the given molecules.
NodeVocabulary build_vocabulary(std::span<const Molecule> mols);

}  // namespace modof::chem

#endif  // MODOF_CHEM_VOCABULARY_H_
