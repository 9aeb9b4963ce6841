//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/net/decoder.h"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

#include "modof/chem/smiles.h"
#include "modof/chem/surgery.h"

namespace modof::net {

using namespace tensor;
using chem::IntermediateMol;
using chem::NodeVocabulary;

const char *head_name(Head h) {
  switch (h) {
  case Head::kDsp: return "dsp";
  case Head::kRfp: return "rfp";
  case Head::kChild: return "child";
  case Head::kType: return "type";
  case Head::kParentAttach: return "pattach";
  case Head::kChildAttach: return "cattach";
  }
  return "?";
}

void HeadStats::add(Head h, bool ok) {
  const int i = static_cast<int>(h);
  ++total[i];
  if (ok)
    ++correct[i];
}

void HeadStats::merge(const HeadStats &o) {
  for (int i = 0; i < kNumHeads; ++i) {
    correct[i] += o.correct[i];
    total[i] += o.total[i];
  }
}

double HeadStats::accuracy(Head h) const {
  const int i = static_cast<int>(h);
  return total[i] == 0 ? 1.0 : static_cast<double>(correct[i]) / total[i];
}

namespace {

int argmax_row(const Mat &x) {
  int best = 0;
  for (long c = 1; c < x.cols(); ++c)
    if (x(0, c) > x(0, best))
      best = static_cast<int>(c);
  return best;
}

// Attachment point as [first atom; second atom or zeros], so the two
// orientations of a fused bond stay distinguishable.
Var point_embeddings(Var atoms, const std::vector<chem::AttachPoint> &pts) {
  std::vector<std::vector<int>> first, second;
  for (const auto &p: pts) {
    first.push_back({ p.atoms[0] });
    second.push_back(p.atoms.size() > 1 ? std::vector<int>{ p.atoms[1] }
                                        : std::vector<int>{});
  }
  return concat_cols({ gather_sum(atoms, first), gather_sum(atoms, second) });
}

// Expansion heads evaluated against the current intermediate molecule.
class Expander {
public:
  Expander(Tape &t, Model &m, const NodeVocabulary &vocab, Var z_plus)
      : t_(t), m_(m), vocab_(vocab), zp_(z_plus) { }

  void invalidate() { emb_.reset(); }

  const Embeddings &embeddings(const IntermediateMol &im) {
    if (!emb_)
      emb_ = embed(t_, m_, im.mol, im.tree);
    return *emb_;
  }

  Var node(const IntermediateMol &im, int n) {
    return index_select(embeddings(im).nodes, { n });
  }

  Var child_logit(Var n) {
    return linear(relu(add(linear(n, p("child.W1")),
                           linear(zp_, p("child.W2")))),
                  p("child.w"));
  }

  Var type_logits(Var n) {
    return linear(relu(add(linear(n, p("type.W1")),
                           linear(zp_, p("type.W2")))),
                  p("type.U"));
  }

  // Local summary of the parent node: relu(U2 [alpha; sum of atoms]).
  Var parent_info(const IntermediateMol &im, int n) {
    const Embeddings &e = embeddings(im);
    Var alpha = index_select(p("tmpn.alpha"), { im.tree.nodes[n].type_id });
    Var s = gather_sum(e.atoms, { im.tree.nodes[n].atoms });
    return relu(linear(concat_cols({ alpha, s }), p("tmpn.U2")));
  }

  Var parent_points(const IntermediateMol &im,
                    const std::vector<chem::AttachPoint> &pts) {
    return point_embeddings(embeddings(im).atoms, pts);
  }

  Var parent_scores(Var ap, int child_type, Var info) {
    Var alpha_c = index_select(p("tmpn.alpha"), { child_type });
    Var row = add(add(linear(alpha_c, p("pattach.W2")),
                      linear(info, p("pattach.W3"))),
                  linear(zp_, p("pattach.W4")));
    return transpose(linear(tanh(add_row(linear(ap, p("pattach.W1")), row)),
                            p("pattach.w")));
  }

  Var child_scores(int child_type, const std::vector<chem::AttachPoint> &pts,
                   Var ap_chosen) {
    Var ac = point_embeddings(template_atoms(child_type), pts);
    Var alpha_c = index_select(p("tmpn.alpha"), { child_type });
    Var row = add(add(linear(alpha_c, p("cattach.W2")),
                      linear(ap_chosen, p("cattach.W3"))),
                  linear(zp_, p("cattach.W4")));
    return transpose(linear(tanh(add_row(linear(ac, p("cattach.W1")), row)),
                            p("cattach.w")));
  }

private:
  Var p(const char *name) { return param(t_, m_, name); }

  Var template_atoms(int type) {
    auto it = templates_.find(type);
    if (it == templates_.end())
      it = templates_.emplace(type,
                              gmpn(t_, m_, graph_input(vocab_.at(type).mol)))
               .first;
    return it->second;
  }

  Tape &t_;
  Model &m_;
  const NodeVocabulary &vocab_;
  Var zp_;
  std::optional<Embeddings> emb_;
  std::map<int, Var> templates_;
};

Var dsp_logits(Tape &t, Model &m, Var nodes, Var z) {
  Var row = linear(z, param(t, m, "dsp.W2"));
  return transpose(
      linear(tanh(add_row(linear(nodes, param(t, m, "dsp.W1")), row)),
             param(t, m, "dsp.w")));
}

Var rfp_logits(Tape &t, Model &m, Var nbrs, Var z_minus) {
  Var row = linear(z_minus, param(t, m, "rfp.W2"));
  return linear(relu(add_row(linear(nbrs, param(t, m, "rfp.W1")), row)),
                param(t, m, "rfp.w"));
}

}  // namespace

PairLoss pair_loss(Tape &t, Model &m, const pairgen::TrainingPair &p,
                   const NodeVocabulary &vocab, double beta, Rng *rng) {
  PairLoss out;
  const EncodedPair enc = encode(t, m, p, rng);
  const LatentDiff &z = enc.z;
  std::vector<Var> terms;
  const auto push = [&](Head h, Var loss) {
    out.head[static_cast<int>(h)] += loss.scalar();
    terms.push_back(loss);
  };

  // Site.
  Var ds = dsp_logits(t, m, enc.x.nodes, z.z);
  push(Head::kDsp, cross_entropy(ds, p.n_d));
  out.stats.add(Head::kDsp, argmax_row(ds.value()) == p.n_d);

  // Removal, one decision per neighbor of the site.
  const auto &nbrs = p.tx.adj[p.n_d];
  if (!nbrs.empty()) {
    Var rl = rfp_logits(t, m, index_select(enc.x.nodes, nbrs), z.z_minus);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const bool removed = std::binary_search(p.removal.begin(),
                                              p.removal.end(), nbrs[k]);
      Var logit = pick(rl, static_cast<long>(k), 0);
      push(Head::kRfp, bce_with_logit(logit, removed ? 1.0 : 0.0));
      out.stats.add(Head::kRfp, (logit.scalar() > 0) == removed);
    }
  }

  // Expansion.
  IntermediateMol im = chem::remove_subtrees(p.mx, p.tx, p.n_d, p.removal);
  std::deque<int> queue = im.frontier;
  Expander ex(t, m, vocab, z.z_plus);
  for (const auto &op: p.ops) {
    if (queue.empty() || queue.front() != op.node)
      throw chem::ChemError("attach op out of breadth-first order");
    Var n = ex.node(im, op.node);
    Var cl = ex.child_logit(n);
    push(Head::kChild, bce_with_logit(cl, op.stop ? 0.0 : 1.0));
    out.stats.add(Head::kChild, (cl.scalar() > 0) == !op.stop);
    if (op.stop) {
      queue.pop_front();
      continue;
    }
    Var tl = ex.type_logits(n);
    push(Head::kType, cross_entropy(tl, op.child_type));
    out.stats.add(Head::kType, argmax_row(tl.value()) == op.child_type);

    const auto cands = chem::enumerate_attachment_candidates(
        im, vocab, op.node, op.child_type);
    if (op.parent_idx < 0
        || op.parent_idx >= static_cast<int>(cands.parent.size())
        || op.child_idx < 0
        || op.child_idx
               >= static_cast<int>(cands.children[op.parent_idx].size()))
      throw chem::ChemError("attach op candidate index out of range");
    Var ap = ex.parent_points(im, cands.parent);
    if (cands.parent.size() > 1) {
      Var ps = ex.parent_scores(ap, op.child_type, ex.parent_info(im, op.node));
      push(Head::kParentAttach, cross_entropy(ps, op.parent_idx));
      out.stats.add(Head::kParentAttach,
                    argmax_row(ps.value()) == op.parent_idx);
    }
    const auto &cpts = cands.children[op.parent_idx];
    if (cpts.size() > 1) {
      Var cs = ex.child_scores(op.child_type, cpts,
                               index_select(ap, { op.parent_idx }));
      push(Head::kChildAttach, cross_entropy(cs, op.child_idx));
      out.stats.add(Head::kChildAttach,
                    argmax_row(cs.value()) == op.child_idx);
    }
    const int id = chem::attach_node(im, vocab, op.node, op.child_type,
                                     cands.parent[op.parent_idx],
                                     cpts[op.child_idx]);
    queue.push_back(id);
    ex.invalidate();
  }
  if (!queue.empty())
    throw chem::ChemError("attach sequence leaves nodes unexpanded");

  Var kl = add(kl_normal(z.mu_minus, z.logvar_minus),
               kl_normal(z.mu_plus, z.logvar_plus));
  out.kl = kl.scalar();
  Var total = scale(kl, beta);
  for (const Var &v: terms)
    total = add(total, v);
  out.total = total;
  return out;
}

HeadStats teacher_accuracy(Model &m, const pairgen::TrainingPair &p,
                           const NodeVocabulary &vocab) {
  Tape t;
  return pair_loss(t, m, p, vocab, 0.0, nullptr).stats;
}

DecodeResult sample_decode(Model &m, const NodeVocabulary &vocab,
                           const chem::Molecule &mx,
                           const chem::JunctionTree &tx, Rng &rng) {
  const HyperParams &hp = m.hp();
  DecodeResult r;
  Tape t;
  const int zd = hp.z_dim;
  Mat zm(1, zd), zp(1, zd);
  for (int i = 0; i < zd; ++i)
    zm(0, i) = rng.normal();
  for (int i = 0; i < zd; ++i)
    zp(0, i) = rng.normal();
  Var z_minus = t.constant(zm), z_plus = t.constant(zp);
  Var z = concat_cols({ z_minus, z_plus });

  const auto fallback = [&](const std::string &why) {
    r.failed = true;
    r.error = why;
    r.mol = mx;
    r.smiles = chem::write_smiles(mx);
    return r;
  };

  try {
    const Embeddings ex_emb = embed(t, m, mx, tx);
    r.n_d = argmax_row(dsp_logits(t, m, ex_emb.nodes, z).value());
    const auto &nbrs = tx.adj[r.n_d];
    if (!nbrs.empty()) {
      const Mat rl =
          rfp_logits(t, m, index_select(ex_emb.nodes, nbrs), z_minus).value();
      for (std::size_t k = 0; k < nbrs.size(); ++k)
        if (rl(static_cast<long>(k), 0) > 0) {
          const auto b = tx.branch(nbrs[k], r.n_d);
          r.removal.insert(r.removal.end(), b.begin(), b.end());
        }
      std::sort(r.removal.begin(), r.removal.end());
      r.removal.erase(std::unique(r.removal.begin(), r.removal.end()),
                      r.removal.end());
    }

    IntermediateMol im = chem::remove_subtrees(mx, tx, r.n_d, r.removal);
    std::deque<int> queue = im.frontier;
    Expander ex(t, m, vocab, z_plus);
    std::vector<int> order(vocab.size());
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      for (int children = 0; children < hp.max_children
                             && r.attachments < hp.max_attachments;
           ++children) {
        Var n = ex.node(im, cur);
        if (ex.child_logit(n).scalar() <= 0)
          break;
        const Mat tl = ex.type_logits(n).value();
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return tl(0, a) > tl(0, b); });
        int type = -1;
        chem::AttachmentCandidates cands;
        std::vector<int> legal;
        for (int cand_type: order) {
          if (vocab.at(cand_type).kind == chem::NodeKind::kAtom)
            continue;
          cands = chem::enumerate_attachment_candidates(im, vocab, cur,
                                                        cand_type);
          legal.clear();
          for (std::size_t i = 0; i < cands.parent.size(); ++i) {
            const int arity = static_cast<int>(cands.parent[i].atoms.size());
            if (!cands.children[i].empty()
                && chem::atoms_after_attach(im, vocab, cand_type, arity)
                       <= hp.max_atoms)
              legal.push_back(static_cast<int>(i));
          }
          if (!legal.empty()) {
            type = cand_type;
            break;
          }
        }
        if (type < 0)
          break;
        Var ap = ex.parent_points(im, cands.parent);
        int pi = legal[0];
        if (legal.size() > 1) {
          const Mat ps =
              ex.parent_scores(ap, type, ex.parent_info(im, cur)).value();
          for (int i: legal)
            if (ps(0, i) > ps(0, pi))
              pi = i;
        }
        const auto &cpts = cands.children[pi];
        int ci = 0;
        if (cpts.size() > 1)
          ci = argmax_row(
              ex.child_scores(type, cpts, index_select(ap, { pi })).value());
        const int id =
            chem::attach_node(im, vocab, cur, type, cands.parent[pi], cpts[ci]);
        queue.push_back(id);
        ++r.attachments;
        ex.invalidate();
      }
    }

    if (im.mol.num_atoms() > hp.max_atoms)
      return fallback("decoded molecule exceeds the atom cap");
    if (!chem::valence_check(im.mol).empty())
      return fallback("decoded molecule violates valence rules");
    r.smiles = chem::write_smiles(im.mol);
    r.mol = chem::parse_smiles(r.smiles);
    r.smiles = chem::write_smiles(r.mol);
  } catch (const chem::ChemError &e) {
    return fallback(e.what());
  }
  return r;
}

}  // namespace modof::net
