//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/net/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "modof/chem/element.h"

namespace modof::net {

int atom_type(const chem::Atom &a) {
  const int e = chem::element_index(a.element);
  const int c = std::clamp(a.charge, chem::kMinCharge, chem::kMaxCharge)
                - chem::kMinCharge;
  return (e * 5 + c) * 2 + (a.aromatic ? 1 : 0);
}

void HyperParams::validate() const {
  const auto need = [](bool ok, const char *what) {
    if (!ok)
      throw std::invalid_argument(std::string("invalid hyperparameter: ")
                                  + what);
  };
  need(hidden >= 1, "hidden must be >= 1");
  need(z_dim >= 1, "z_dim must be >= 1");
  need(t_a >= 1, "t_a must be >= 1");
  need(t_n >= 1, "t_n must be >= 1");
  need(max_atoms >= 1, "max_atoms must be >= 1");
  need(batch >= 1, "batch must be >= 1");
  need(epochs >= 0, "epochs must be >= 0");
  need(beta_every >= 1, "beta_every must be >= 1");
  need(beta_init > 0 && beta_init <= beta_cap, "beta_init must be in (0, cap]");
  need(beta_step >= 0, "beta_step must be >= 0");
  need(lr > 0, "lr must be > 0");
  need(max_children >= 1, "max_children must be >= 1");
  need(max_attachments >= 1, "max_attachments must be >= 1");
}

double beta_at(const HyperParams &hp, int epoch, long long post_epoch1_batches) {
  if (epoch <= 1)
    return hp.beta_init;
  const long long k = post_epoch1_batches / hp.beta_every;
  return std::min(hp.beta_init + hp.beta_step * static_cast<double>(k),
                  hp.beta_cap);
}

GraphInput graph_input(const chem::Molecule &m) {
  GraphInput g;
  g.num_atoms = m.num_atoms();
  g.atom_x = Mat::Zero(m.num_atoms(), kAtomTypes);
  for (int i = 0; i < m.num_atoms(); ++i)
    g.atom_x(i, atom_type(m.atom(i))) = 1.0;
  const int nd = 2 * m.num_bonds();
  g.bond_x = Mat::Zero(nd, kBondTypes);
  g.src.resize(nd);
  std::vector<int> dst(nd);
  g.into_atom.assign(m.num_atoms(), {});
  for (int k = 0; k < m.num_bonds(); ++k) {
    const auto &b = m.bond(k);
    const int col = static_cast<int>(b.order) - 1;
    // 2k: begin -> end, 2k+1: end -> begin.
    g.src[2 * k] = b.begin;
    dst[2 * k] = b.end;
    g.src[2 * k + 1] = b.end;
    dst[2 * k + 1] = b.begin;
    g.bond_x(2 * k, col) = 1.0;
    g.bond_x(2 * k + 1, col) = 1.0;
    g.into_atom[b.end].push_back(2 * k);
    g.into_atom[b.begin].push_back(2 * k + 1);
  }
  g.into_except_reverse.assign(nd, {});
  for (int e = 0; e < nd; ++e) {
    const int i = g.src[e], j = dst[e];
    for (int f: g.into_atom[i])
      if (g.src[f] != j)
        g.into_except_reverse[e].push_back(f);
  }
  return g;
}

TreeInput tree_input(const chem::JunctionTree &t) {
  TreeInput in;
  const int n = t.num_nodes();
  for (const auto &node: t.nodes) {
    in.types.push_back(node.type_id);
    in.node_atoms.push_back(node.atoms);
  }
  std::vector<int> dst;
  in.into_node.assign(n, {});
  for (const auto &[u, v]: t.edges) {
    for (const auto &[a, b]: { std::pair{ u, v }, std::pair{ v, u } }) {
      in.into_node[b].push_back(static_cast<int>(in.src.size()));
      in.src.push_back(a);
      dst.push_back(b);
      in.shared_atoms.push_back(t.shared_atoms(a, b));
    }
  }
  const int ne = static_cast<int>(in.src.size());
  in.into_except_reverse.assign(ne, {});
  for (int e = 0; e < ne; ++e)
    for (int f: in.into_node[in.src[e]])
      if (in.src[f] != dst[e])
        in.into_except_reverse[e].push_back(f);
  return in;
}

Model::Model(const HyperParams &hp, int vocab_size)
    : hp_(hp), vocab_size_(vocab_size) {
  hp.validate();
  if (vocab_size < 1)
    throw std::invalid_argument("model needs a non-empty vocabulary");
  const long h = hp.hidden, z = hp.z_dim, v = vocab_size;
  auto &ps = params_;
  ps.add("gmpn.W1", h, kAtomTypes);
  ps.add("gmpn.W2", h, kBondTypes);
  ps.add("gmpn.W3", h, h);
  ps.add("gmpn.U1", h, kAtomTypes);
  ps.add("gmpn.U2", h, h * hp.t_a);
  ps.add("tmpn.alpha", v, h);
  ps.add("tmpn.W1", h, h);
  ps.add("tmpn.W2", h, 2 * h);
  ps.add("tmpn.W3", h, h);
  ps.add("tmpn.W4", h, h);
  ps.add("tmpn.U1", h, h);
  ps.add("tmpn.U2", h, 2 * h);
  ps.add("tmpn.U3", h, h * hp.t_n);
  for (const char *head: { "mu_minus", "logvar_minus", "mu_plus",
                           "logvar_plus" }) {
    ps.add(std::string(head) + ".W", z, h);
    ps.add(std::string(head) + ".b", 1, z);
  }
  ps.add("dsp.w", 1, h);
  ps.add("dsp.W1", h, h);
  ps.add("dsp.W2", h, 2 * z);
  ps.add("rfp.w", 1, h);
  ps.add("rfp.W1", h, h);
  ps.add("rfp.W2", h, z);
  ps.add("child.w", 1, h);
  ps.add("child.W1", h, h);
  ps.add("child.W2", h, z);
  ps.add("type.U", v, h);
  ps.add("type.W1", h, h);
  ps.add("type.W2", h, z);
  ps.add("pattach.w", 1, h);
  ps.add("pattach.W1", h, 2 * h);
  ps.add("pattach.W2", h, h);
  ps.add("pattach.W3", h, h);
  ps.add("pattach.W4", h, z);
  ps.add("cattach.w", 1, h);
  ps.add("cattach.W1", h, 2 * h);
  ps.add("cattach.W2", h, h);
  ps.add("cattach.W3", h, 2 * h);
  ps.add("cattach.W4", h, z);
}

}  // namespace modof::net
