//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_NET_ENCODER_H_
#define MODOF_NET_ENCODER_H_

#include <utility>
#include <vector>

#include "modof/net/model.h"
#include "modof/pairgen/pairs.h"

namespace modof::net {

/// Tape node for a named parameter.
Var param(Tape &t, Model &m, const char *name);

/// Atom embeddings (atoms x hidden) after t_a rounds of directed-bond
/// messages; the readout uses the concatenation of all rounds.
Var gmpn(Tape &t, Model &m, const GraphInput &g);

/// Tree node embeddings (nodes x hidden) from atom embeddings.
Var tmpn(Tape &t, Model &m, const TreeInput &tree, Var atoms);

struct Embeddings {
  Var atoms;
  Var nodes;
};

Embeddings embed(Tape &t, Model &m, const chem::Molecule &mol,
                 const chem::JunctionTree &tree);

/// Row sums of node embeddings over the given node sets.
std::pair<Var, Var> diff_embed(Var nodes_x, Var nodes_y,
                               const std::vector<int> &minus_nodes,
                               const std::vector<int> &plus_nodes);

struct LatentDiff {
  Var mu_minus, logvar_minus, mu_plus, logvar_plus;
  Var z_minus, z_plus, z;
};

/// Gaussian heads on (h-, h+) and a reparameterized sample. Log-variances
/// are -|affine| so the posterior variance never exceeds one. With a null
/// `rng` the sample is the mean.
LatentDiff latent(Tape &t, Model &m, Var h_minus, Var h_plus, Rng *rng);

struct EncodedPair {
  Embeddings x, y;
  LatentDiff z;
};

/// Embeds both molecules and pools D + {n_d} in T_x and J + {n_d image} in
/// T_y.
EncodedPair encode(Tape &t, Model &m, const pairgen::TrainingPair &p,
                   Rng *rng);

/// Node sets pooled into h- and h+.
std::vector<int> minus_nodes(const pairgen::TrainingPair &p);
std::vector<int> plus_nodes(const pairgen::TrainingPair &p);

}  // namespace modof::net

#endif  // MODOF_NET_ENCODER_H_
