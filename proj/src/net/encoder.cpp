//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/net/encoder.h"

#include <algorithm>

namespace modof::net {

using namespace tensor;

Var param(Tape &t, Model &m, const char *name) { return t.param(m.p(name)); }

Var gmpn(Tape &t, Model &m, const GraphInput &g) {
  const int h = m.hp().hidden;
  Var x = t.constant(g.atom_x);
  Var w3 = param(t, m, "gmpn.W3");
  // Input part of every message: W1 x_i + W2 x_ij.
  Var src_x = index_select(x, g.src);
  Var base = add(linear(src_x, param(t, m, "gmpn.W1")),
                 linear(t.constant(g.bond_x), param(t, m, "gmpn.W2")));
  std::vector<Var> rounds;
  Var msg = relu(base);
  rounds.push_back(msg);
  for (int it = 1; it < m.hp().t_a; ++it) {
    Var agg = gather_sum(msg, g.into_except_reverse, h);
    msg = relu(add(base, linear(agg, w3)));
    rounds.push_back(msg);
  }
  Var all = concat_cols(rounds);
  Var into = gather_sum(all, g.into_atom, static_cast<long>(h) * m.hp().t_a);
  return relu(add(linear(x, param(t, m, "gmpn.U1")),
                  linear(into, param(t, m, "gmpn.U2"))));
}

Var tmpn(Tape &t, Model &m, const TreeInput &tree, Var atoms) {
  const int h = m.hp().hidden;
  Var s_u = gather_sum(atoms, tree.node_atoms, h);
  Var alpha = index_select(param(t, m, "tmpn.alpha"), tree.types);
  Var node_info = concat_cols({ alpha, s_u });
  Var w4 = param(t, m, "tmpn.W4");
  Var readout_local =
      relu(linear(node_info, param(t, m, "tmpn.U2")));
  Var into;
  if (tree.src.empty()) {
    into = t.constant(Mat::Zero(static_cast<long>(tree.types.size()),
                                static_cast<long>(h) * m.hp().t_n));
  } else {
    Var local = relu(linear(node_info, param(t, m, "tmpn.W2")));
    Var s_uv = gather_sum(atoms, tree.shared_atoms, h);
    Var base = add(linear(index_select(local, tree.src),
                          param(t, m, "tmpn.W1")),
                   linear(s_uv, param(t, m, "tmpn.W3")));
    std::vector<Var> rounds;
    Var msg = relu(base);
    rounds.push_back(msg);
    for (int it = 1; it < m.hp().t_n; ++it) {
      Var agg = gather_sum(msg, tree.into_except_reverse, h);
      msg = relu(add(base, linear(agg, w4)));
      rounds.push_back(msg);
    }
    into = gather_sum(concat_cols(rounds), tree.into_node,
                      static_cast<long>(h) * m.hp().t_n);
  }
  return relu(add(linear(readout_local, param(t, m, "tmpn.U1")),
                  linear(into, param(t, m, "tmpn.U3"))));
}

Embeddings embed(Tape &t, Model &m, const chem::Molecule &mol,
                 const chem::JunctionTree &tree) {
  Embeddings e;
  e.atoms = gmpn(t, m, graph_input(mol));
  e.nodes = tmpn(t, m, tree_input(tree), e.atoms);
  return e;
}

std::pair<Var, Var> diff_embed(Var nodes_x, Var nodes_y,
                               const std::vector<int> &minus,
                               const std::vector<int> &plus) {
  return { sum_rows(index_select(nodes_x, minus)),
           sum_rows(index_select(nodes_y, plus)) };
}

LatentDiff latent(Tape &t, Model &m, Var h_minus, Var h_plus, Rng *rng) {
  LatentDiff l;
  const auto affine = [&](Var h, const std::string &head) {
    return add_row(linear(h, param(t, m, (head + ".W").c_str())),
                   param(t, m, (head + ".b").c_str()));
  };
  l.mu_minus = affine(h_minus, "mu_minus");
  const auto neg_abs = [](Var x) {
    return scale(add(relu(x), relu(scale(x, -1.0))), -1.0);
  };
  l.logvar_minus = neg_abs(affine(h_minus, "logvar_minus"));
  l.mu_plus = affine(h_plus, "mu_plus");
  l.logvar_plus = neg_abs(affine(h_plus, "logvar_plus"));
  const int zd = m.hp().z_dim;
  Mat e1 = Mat::Zero(1, zd), e2 = Mat::Zero(1, zd);
  if (rng) {
    for (int i = 0; i < zd; ++i)
      e1(0, i) = rng->normal();
    for (int i = 0; i < zd; ++i)
      e2(0, i) = rng->normal();
  }
  l.z_minus = reparam(l.mu_minus, l.logvar_minus, e1);
  l.z_plus = reparam(l.mu_plus, l.logvar_plus, e2);
  l.z = concat_cols({ l.z_minus, l.z_plus });
  return l;
}

std::vector<int> minus_nodes(const pairgen::TrainingPair &p) {
  std::vector<int> v = p.path.removed;
  v.push_back(p.n_d);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> plus_nodes(const pairgen::TrainingPair &p) {
  std::vector<int> v = p.path.added;
  v.push_back(p.n_d_y);
  std::sort(v.begin(), v.end());
  return v;
}

EncodedPair encode(Tape &t, Model &m, const pairgen::TrainingPair &p,
                   Rng *rng) {
  EncodedPair e;
  e.x = embed(t, m, p.mx, p.tx);
  e.y = embed(t, m, p.my, p.ty);
  const auto [hm, hp] =
      diff_embed(e.x.nodes, e.y.nodes, minus_nodes(p), plus_nodes(p));
  e.z = latent(t, m, hm, hp, rng);
  return e;
}

}  // namespace modof::net
