//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_NET_MODEL_H_
#define MODOF_NET_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "modof/chem/junction_tree.h"
#include "modof/chem/molecule.h"
#include "modof/tensor/params.h"
#include "modof/util/rng.h"

namespace modof::net {

using tensor::Mat;
using tensor::Tape;
using tensor::Var;

/// Element x charge x aromatic one-hot.
inline constexpr int kAtomTypes = 120;
inline constexpr int kBondTypes = 4;

int atom_type(const chem::Atom &a);

struct HyperParams {
  int hidden = 256;
  int z_dim = 32;
  int t_a = 6;
  int t_n = 3;
  int max_atoms = 38;
  double beta_init = 0.1;
  double beta_step = 0.05;
  int beta_every = 500;
  double beta_cap = 0.5;
  double lr = 1e-3;
  int batch = 32;
  int epochs = 10;
  int max_children = 8;
  int max_attachments = 30;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// 0.1 throughout epoch 1 (1-based); afterwards
/// beta_init + beta_step * floor(post_epoch1_batches / beta_every), capped.
double beta_at(const HyperParams &hp, int epoch, long long post_epoch1_batches);

/// Directed-bond structure of a molecular graph.
struct GraphInput {
  int num_atoms = 0;
  Mat atom_x;                  // atoms x kAtomTypes
  Mat bond_x;                  // directed bonds x kBondTypes
  std::vector<int> src;        // directed bond -> source atom
  std::vector<std::vector<int>> into_except_reverse;  // k->i for bond i->j
  std::vector<std::vector<int>> into_atom;            // i->j for atom j
};

GraphInput graph_input(const chem::Molecule &m);

/// Directed-edge structure of a junction tree.
struct TreeInput {
  std::vector<int> types;
  std::vector<std::vector<int>> node_atoms;
  std::vector<int> src;
  std::vector<std::vector<int>> shared_atoms;        // per directed edge
  std::vector<std::vector<int>> into_except_reverse;
  std::vector<std::vector<int>> into_node;
};

TreeInput tree_input(const chem::JunctionTree &t);

/// All learnable matrices. Names follow the symbols of the model
/// description: gmpn.{W1,W2,W3,U1,U2}, tmpn.{alpha,W1..W4,U1..U3},
/// {mu,logvar}_{minus,plus}.{W,b}, dsp.{w,W1,W2}, rfp.{w,W1,W2},
/// child.{w,W1,W2}, type.{U,W1,W2}, pattach.{w,W1..W4}, cattach.{w,W1..W4}.
class Model {
public:
  Model() = default;
  Model(const HyperParams &hp, int vocab_size);

  const HyperParams &hp() const { return hp_; }
  HyperParams &mutable_hp() { return hp_; }
  int vocab_size() const { return vocab_size_; }
  tensor::ParamStore &params() { return params_; }
  const tensor::ParamStore &params() const { return params_; }
  tensor::Param &p(const std::string &name) { return params_.get(name); }

  void init(Rng &rng) { params_.init_glorot(rng); }

private:
  HyperParams hp_;
  int vocab_size_ = 0;
  tensor::ParamStore params_;
};

}  // namespace modof::net

#endif  // MODOF_NET_MODEL_H_
