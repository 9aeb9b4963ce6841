//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_NET_DECODER_H_
#define MODOF_NET_DECODER_H_

#include <array>
#include <string>
#include <vector>

#include "modof/chem/vocabulary.h"
#include "modof/net/encoder.h"
#include "modof/pairgen/pairs.h"

namespace modof::net {

enum class Head : int {
  kDsp = 0,       // disconnection site
  kRfp,           // removal per neighbor of the site
  kChild,         // continue / stop at the current node
  kType,          // child node type
  kParentAttach,  // attachment point on the parent
  kChildAttach,   // attachment point on the child template
};

inline constexpr int kNumHeads = 6;

const char *head_name(Head h);

struct HeadStats {
  std::array<long long, kNumHeads> correct{};
  std::array<long long, kNumHeads> total{};

  void add(Head h, bool ok);
  void merge(const HeadStats &o);
  /// 1 when the head made no decisions.
  double accuracy(Head h) const;
};

struct PairLoss {
  Var total;
  std::array<double, kNumHeads> head{};
  double kl = 0.0;
  HeadStats stats;
};

/// Teacher-forced loss of one pair: the six head losses plus
/// beta * (KL- + KL+). A null `rng` uses z = mu.
PairLoss pair_loss(Tape &t, Model &m, const pairgen::TrainingPair &p,
                   const chem::NodeVocabulary &vocab, double beta, Rng *rng);

/// Per-head accuracy of teacher-forced decisions with z = mu.
HeadStats teacher_accuracy(Model &m, const pairgen::TrainingPair &p,
                           const chem::NodeVocabulary &vocab);

struct DecodeResult {
  chem::Molecule mol;
  std::string smiles;
  bool failed = false;  // output replaced by the input
  std::string error;
  int n_d = -1;
  std::vector<int> removal;
  int attachments = 0;
};

/// Free decoding from z ~ N(0, I): site argmax, removal where the
/// predicted probability exceeds 0.5, then breadth-first expansion with
/// the type head masked to legal fragments that fit max_atoms. Invalid
/// results fall back to the input with `failed` set.
DecodeResult sample_decode(Model &m, const chem::NodeVocabulary &vocab,
                           const chem::Molecule &mx,
                           const chem::JunctionTree &tx, Rng &rng);

}  // namespace modof::net

#endif  // MODOF_NET_DECODER_H_
