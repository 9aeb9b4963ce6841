//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_PAIRGEN_PAIRS_H_
#define MODOF_PAIRGEN_PAIRS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modof/chem/junction_tree.h"
#include "modof/chem/molecule.h"
#include "modof/chem/surgery.h"
#include "modof/chem/vocabulary.h"
#include "modof/pairgen/ged.h"
#include "modof/props/plogp.h"
#include "modof/util/rng.h"

namespace modof::pairgen {

/// One decoder decision. Expansion ops attach a child of vocabulary type
/// `child_type` to intermediate node `node` through candidate
/// (parent_idx, child_idx) of enumerate_attachment_candidates; stop ops end
/// the expansion of `node`.
struct AttachOp {
  bool stop = false;
  int node = 0;
  int child_type = -1;
  int parent_idx = 0;
  int child_idx = 0;

  bool operator==(const AttachOp &) const = default;
};

std::string serialize_ops(const std::vector<AttachOp> &ops,
                          const chem::NodeVocabulary &vocab);
/// Throws chem::ChemError on malformed text, VocabularyMiss on unknown
/// fragments.
std::vector<AttachOp> parse_ops(const std::string &text,
                                const chem::NodeVocabulary &vocab);

struct TrainingPair {
  std::string mx_smiles, my_smiles;  // canonical
  chem::Molecule mx, my;
  chem::JunctionTree tx, ty;
  EditPath path;
  int n_d = -1;    // in T_x
  int n_d_y = -1;  // image in T_y
  std::vector<int> removal;
  std::vector<AttachOp> ops;
  double sim = 0.0;
  double prop_delta = 0.0;
};

struct PairLimits {
  int max_children = 8;
  int max_attachments = 30;
  int max_paths = 32;
  GedOptions ged;
};

enum class DeriveStatus {
  kOk,
  kSiteCount,      // not exactly one disconnection site
  kGedBudget,      // optimality not proven within the search budget
  kRemoval,        // removed nodes are not whole branches at the site
  kAttachment,     // no attachment candidate reproduces the target
  kLimits,         // too many children or attachments
  kMismatch,       // replayed molecule differs from the target
};

const char *to_string(DeriveStatus s);

/// Derives removal set and teacher op sequence from an edit path. On
/// success fills pair.{n_d, n_d_y, removal, ops}; mx/my/tx/ty/path must be
/// set.
DeriveStatus derive_edit(TrainingPair &pair, const chem::NodeVocabulary &vocab,
                         const PairLimits &limits = {});

/// Runs derive_edit over the optimal edit paths (search order, at most
/// `max_paths`) and keeps the first that derives; pair.path is replaced by
/// that path. Returns the status of the first path when none derives.
DeriveStatus derive_first_edit(TrainingPair &pair,
                               const chem::NodeVocabulary &vocab,
                               const PairLimits &limits = {});

/// Replays removal and ops; returns the resulting intermediate molecule.
/// Throws chem::ChemError when an op is inconsistent.
chem::IntermediateMol replay(const TrainingPair &pair,
                             const chem::NodeVocabulary &vocab);

/// Builds mx/my/tx/ty/path for canonical SMILES inputs.
TrainingPair make_pair_skeleton(const std::string &mx_smiles,
                                const std::string &my_smiles,
                                const chem::NodeVocabulary &vocab,
                                const GedOptions &ged = {});

struct ExtractOptions {
  double sim_min = 0.6;
  double delta_min = 0.0;
  PairLimits limits;
  int threads = 1;
};

struct ExtractReport {
  long long candidates = 0;
  long long sim_rejected = 0;
  long long prop_rejected = 0;
  long long size_rejected = 0;
  std::map<int, long long> site_histogram;  // over pairs passing both gates
  std::map<std::string, long long> derive_status;
};

/// Ordered pairs (mx, my), mx != my, passing the similarity and property
/// gates with exactly one disconnection site; corpus order, then my order.
std::vector<TrainingPair> extract_pairs(const std::vector<std::string> &corpus,
                                        const chem::NodeVocabulary &vocab,
                                        const props::PropertyScorer &prop,
                                        const ExtractOptions &opts,
                                        ExtractReport *report = nullptr);

/// |disconnection_sites| per gated pair.
std::map<int, long long>
disconnection_histogram(const std::vector<std::pair<std::string, std::string>>
                            &pairs,
                        const chem::NodeVocabulary &vocab,
                        const GedOptions &ged = {});

// Pairs TSV.
void write_pairs_tsv(const std::string &path,
                     const std::vector<TrainingPair> &pairs,
                     const chem::NodeVocabulary &vocab,
                     const std::vector<std::string> &header_comments = {});
/// Rebuilds trees and re-derives each edit, which must agree with the
/// stored columns; throws chem::ChemError with the line number otherwise.
std::vector<TrainingPair> read_pairs_tsv(const std::string &path,
                                         const chem::NodeVocabulary &vocab,
                                         const PairLimits &limits = {});

/// A constructive single-site edit: remove at most one branch at `n_d`
/// and attach new fragments there.
struct PlantedEdit {
  std::string mx_smiles, my_smiles;
  int n_d = -1;                      // in decompose(parse(mx_smiles))
  std::vector<int> removal;          // same indexing
  std::vector<std::string> attached; // fragment descriptors
};

struct PlantOptions {
  double remove_probability = 0.5;
  int max_attach = 2;
  /// Largest removable branch as a fraction of the tree.
  double max_removal_fraction = 0.34;
  int max_atoms = 38;
  int attempts = 50;
};

/// Tries to plant an edit on `mx` using fragments from `fragments`. The site
/// is chosen among tree nodes with no symmetric twin, and the edit is kept
/// only when the edited molecule decomposes into exactly the edited tree.
std::optional<PlantedEdit> plant_edit(const chem::Molecule &mx,
                                      const std::vector<std::string> &fragments,
                                      Rng &rng, const PlantOptions &opts = {});

/// Tree nodes whose labeled-tree refinement class is a singleton.
std::vector<bool> asymmetric_nodes(const chem::Molecule &m,
                                   const chem::JunctionTree &t);

}  // namespace modof::pairgen

#endif  // MODOF_PAIRGEN_PAIRS_H_
