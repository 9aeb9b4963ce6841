//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/pairgen/pairs.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "modof/chem/isomorphism.h"
#include "modof/chem/smiles.h"
#include "modof/props/fingerprint.h"
#include "modof/util/parallel.h"
#include "modof/util/text.h"

namespace modof::pairgen {

using chem::ChemError;
using chem::IntermediateMol;
using chem::JunctionTree;
using chem::Molecule;
using chem::NodeVocabulary;

namespace {

constexpr const char *kColumns =
    "mx_smiles\tmy_smiles\tn_d_index\tremoval_node_indices\t"
    "attach_sequence\tsim\tprop_delta";

int to_int(std::string_view s, const char *what) {
  long long v = 0;
  if (!parse_int(s, v))
    throw ChemError(std::string("bad ") + what + ": '" + std::string(s)
                    + "'");
  return static_cast<int>(v);
}

// Atoms and bonds of the selected y nodes, with each atom labeled by the
// sorted list of selected y nodes containing it.
struct Target {
  Molecule mol;
  std::vector<std::vector<int>> membership;
};

Target build_target(const Molecule &my, const JunctionTree &ty,
                    const std::vector<bool> &selected) {
  Target t;
  std::vector<int> local(my.num_atoms(), -1);
  std::vector<bool> bond_in(my.num_bonds(), false);
  for (int n = 0; n < ty.num_nodes(); ++n) {
    if (!selected[n])
      continue;
    for (int a: ty.nodes[n].atoms) {
      if (local[a] < 0) {
        local[a] = t.mol.add_atom(my.atom(a));
        t.membership.emplace_back();
      }
      t.membership[local[a]].push_back(n);
    }
    for (int k: ty.nodes[n].bonds)
      bond_in[k] = true;
  }
  for (int k = 0; k < my.num_bonds(); ++k) {
    if (!bond_in[k])
      continue;
    const auto &b = my.bond(k);
    t.mol.add_bond(local[b.begin], local[b.end], b.order);
  }
  for (auto &m: t.membership)
    std::sort(m.begin(), m.end());
  return t;
}

// True when im is the selected part of my with every intermediate node
// landing on its corresponding y node.
bool matches_target(const IntermediateMol &im, const std::vector<int> &im_to_y,
                    const Molecule &my, const JunctionTree &ty,
                    const std::vector<bool> &selected) {
  const Target t = build_target(my, ty, selected);
  if (t.mol.num_atoms() != im.mol.num_atoms()
      || t.mol.num_bonds() != im.mol.num_bonds())
    return false;
  std::vector<std::vector<int>> sig(im.mol.num_atoms());
  for (int n = 0; n < im.tree.num_nodes(); ++n)
    for (int a: im.tree.nodes[n].atoms)
      sig[a].push_back(im_to_y[n]);
  for (auto &s: sig)
    std::sort(s.begin(), s.end());
  const auto compat = [&](int a, int b) {
    const auto &x = im.mol.atom(a);
    const auto &y = t.mol.atom(b);
    return x.element == y.element && x.charge == y.charge
           && sig[a] == t.membership[b];
  };
  chem::IsoOptions o;
  o.max_steps = 200000;
  return chem::find_isomorphism(im.mol, t.mol, compat, o).has_value();
}

int min_shared_atom(const JunctionTree &t, int u, int v) {
  const auto s = t.shared_atoms(u, v);
  return s.empty() ? -1 : s.front();
}

}  // namespace

const char *to_string(DeriveStatus s) {
  switch (s) {
  case DeriveStatus::kOk: return "ok";
  case DeriveStatus::kSiteCount: return "site_count";
  case DeriveStatus::kGedBudget: return "ged_budget";
  case DeriveStatus::kRemoval: return "removal";
  case DeriveStatus::kAttachment: return "attachment";
  case DeriveStatus::kLimits: return "limits";
  case DeriveStatus::kMismatch: return "mismatch";
  }
  return "?";
}

std::string serialize_ops(const std::vector<AttachOp> &ops,
                          const NodeVocabulary &vocab) {
  std::vector<std::string> parts;
  for (const auto &op: ops) {
    if (op.stop)
      parts.push_back("S:" + std::to_string(op.node));
    else
      parts.push_back("E:" + std::to_string(op.node) + ","
                      + vocab.at(op.child_type).descriptor + ","
                      + std::to_string(op.parent_idx) + ","
                      + std::to_string(op.child_idx));
  }
  return join(parts, ";");
}

std::vector<AttachOp> parse_ops(const std::string &text,
                                const NodeVocabulary &vocab) {
  std::vector<AttachOp> ops;
  if (trim(text).empty())
    return ops;
  for (const auto &part: split(text, ';')) {
    if (part.size() < 3 || part[1] != ':')
      throw ChemError("bad attach op: '" + part + "'");
    AttachOp op;
    const std::string body = part.substr(2);
    if (part[0] == 'S') {
      op.stop = true;
      op.node = to_int(body, "stop node");
    } else if (part[0] == 'E') {
      const auto f = split(body, ',');
      if (f.size() != 4)
        throw ChemError("bad attach op: '" + part + "'");
      op.node = to_int(f[0], "parent node");
      op.child_type = vocab.lookup(f[1]);
      op.parent_idx = to_int(f[2], "parent candidate");
      op.child_idx = to_int(f[3], "child candidate");
    } else {
      throw ChemError("bad attach op: '" + part + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

DeriveStatus derive_edit(TrainingPair &pair, const NodeVocabulary &vocab,
                         const PairLimits &limits) {
  const auto gx = to_labeled(pair.tx);
  const auto gy = to_labeled(pair.ty);
  if (!pair.path.optimal)
    return DeriveStatus::kGedBudget;
  const auto sites = disconnection_sites(pair.path, gx, gy);
  if (sites.size() != 1)
    return DeriveStatus::kSiteCount;
  const auto fwd = pair.path.forward(gx.size());
  const int n_d = sites.front();
  const int n_dy = fwd[n_d];

  int nd_im = -1;
  std::vector<int> old_to_new;
  IntermediateMol im;
  try {
    im = chem::remove_subtrees(pair.mx, pair.tx, n_d, pair.path.removed,
                               &nd_im, &old_to_new);
  } catch (const ChemError &) {
    return DeriveStatus::kRemoval;
  }
  std::vector<int> im_to_y(im.tree.num_nodes(), -1);
  std::vector<bool> selected(gy.size(), false);
  for (const auto &[x, y]: pair.path.matched) {
    im_to_y[old_to_new[x]] = y;
    selected[y] = true;
  }
  if (!matches_target(im, im_to_y, pair.my, pair.ty, selected))
    return DeriveStatus::kMismatch;

  std::vector<int> y_to_im(gy.size(), -1);
  for (int n = 0; n < im.tree.num_nodes(); ++n)
    y_to_im[im_to_y[n]] = n;
  std::vector<AttachOp> ops;
  std::deque<int> queue{ n_dy };
  int attachments = 0;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    std::vector<int> kids;
    for (int c: pair.ty.neighbors(q))
      if (!selected[c])
        kids.push_back(c);
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      const int ta = gy.labels[a], tb = gy.labels[b];
      if (ta != tb)
        return ta < tb;
      const int sa = min_shared_atom(pair.ty, q, a);
      const int sb = min_shared_atom(pair.ty, q, b);
      return sa != sb ? sa < sb : a < b;
    });
    if (static_cast<int>(kids.size()) > limits.max_children)
      return DeriveStatus::kLimits;
    const int parent = y_to_im[q];
    for (int c: kids) {
      if (++attachments > limits.max_attachments)
        return DeriveStatus::kLimits;
      selected[c] = true;
      const int type = gy.labels[c];
      const auto cands =
          chem::enumerate_attachment_candidates(im, vocab, parent, type);
      bool found = false;
      for (std::size_t i = 0; i < cands.parent.size() && !found; ++i) {
        for (std::size_t j = 0; j < cands.children[i].size() && !found; ++j) {
          auto trial = chem::try_attach(im, vocab, parent, type,
                                        cands.parent[i], cands.children[i][j]);
          if (!trial)
            continue;
          auto trial_map = im_to_y;
          trial_map.push_back(c);
          if (!matches_target(*trial, trial_map, pair.my, pair.ty, selected))
            continue;
          im = std::move(*trial);
          im_to_y = std::move(trial_map);
          y_to_im[c] = im.tree.num_nodes() - 1;
          ops.push_back({ false, parent, type, static_cast<int>(i),
                          static_cast<int>(j) });
          found = true;
        }
      }
      if (!found)
        return DeriveStatus::kAttachment;
      queue.push_back(c);
    }
    ops.push_back({ true, parent, -1, 0, 0 });
  }
  if (chem::write_smiles(im.mol) != pair.my_smiles)
    return DeriveStatus::kMismatch;

  pair.n_d = n_d;
  pair.n_d_y = n_dy;
  pair.removal = pair.path.removed;
  pair.ops = std::move(ops);
  return DeriveStatus::kOk;
}

DeriveStatus derive_first_edit(TrainingPair &pair,
                               const NodeVocabulary &vocab,
                               const PairLimits &limits) {
  if (!pair.path.optimal)
    return DeriveStatus::kGedBudget;
  std::optional<DeriveStatus> first;
  std::optional<TrainingPair> done;
  const auto gx = to_labeled(pair.tx);
  const auto gy = to_labeled(pair.ty);
  for_each_optimal_path(
      gx, gy, pair.path.cost,
      [&](const EditPath &path) {
        TrainingPair trial = pair;
        trial.path = path;
        const DeriveStatus st = derive_edit(trial, vocab, limits);
        if (!first)
          first = st;
        if (st != DeriveStatus::kOk)
          return false;
        done = std::move(trial);
        return true;
      },
      limits.max_paths, limits.ged);
  if (done) {
    pair = std::move(*done);
    return DeriveStatus::kOk;
  }
  return first.value_or(DeriveStatus::kGedBudget);
}

IntermediateMol replay(const TrainingPair &pair, const NodeVocabulary &vocab) {
  IntermediateMol im =
      chem::remove_subtrees(pair.mx, pair.tx, pair.n_d, pair.removal);
  std::deque<int> queue = im.frontier;
  for (const auto &op: pair.ops) {
    if (queue.empty() || queue.front() != op.node)
      throw ChemError("attach op out of breadth-first order");
    if (op.stop) {
      queue.pop_front();
      continue;
    }
    const auto cands =
        chem::enumerate_attachment_candidates(im, vocab, op.node,
                                              op.child_type);
    if (op.parent_idx < 0
        || op.parent_idx >= static_cast<int>(cands.parent.size())
        || op.child_idx < 0
        || op.child_idx
               >= static_cast<int>(cands.children[op.parent_idx].size()))
      throw ChemError("attach op candidate index out of range");
    const int id = chem::attach_node(im, vocab, op.node, op.child_type,
                                     cands.parent[op.parent_idx],
                                     cands.children[op.parent_idx]
                                                   [op.child_idx]);
    queue.push_back(id);
  }
  if (!queue.empty())
    throw ChemError("attach sequence leaves nodes unexpanded");
  im.frontier.clear();
  return im;
}

TrainingPair make_pair_skeleton(const std::string &mx_smiles,
                                const std::string &my_smiles,
                                const NodeVocabulary &vocab,
                                const GedOptions &ged) {
  TrainingPair p;
  p.mx = chem::parse_smiles(mx_smiles);
  p.my = chem::parse_smiles(my_smiles);
  p.mx_smiles = chem::write_smiles(p.mx);
  p.my_smiles = chem::write_smiles(p.my);
  p.tx = chem::junction_tree(p.mx, vocab);
  p.ty = chem::junction_tree(p.my, vocab);
  p.path = tree_edit_distance(p.tx, p.ty, ged);
  return p;
}

std::vector<TrainingPair> extract_pairs(const std::vector<std::string> &corpus,
                                        const NodeVocabulary &vocab,
                                        const props::PropertyScorer &prop,
                                        const ExtractOptions &opts,
                                        ExtractReport *report) {
  struct Entry {
    bool ok = false;
    std::string smiles;
    Molecule mol;
    JunctionTree tree;
    props::Fingerprint fp{ 2048, 2 };
    double score = 0.0;
  };
  const std::size_t n = corpus.size();
  std::vector<Entry> e(n);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    try {
      e[i].mol = chem::parse_smiles(corpus[i]);
      e[i].smiles = chem::write_smiles(e[i].mol);
      e[i].mol = chem::parse_smiles(e[i].smiles);
      e[i].tree = chem::junction_tree(e[i].mol, vocab);
      e[i].fp = props::morgan_fp(e[i].mol);
      e[i].score = prop.score(e[i].mol);
      e[i].ok = true;
    } catch (const std::exception &) {
      e[i].ok = false;
    }
  });

  std::vector<std::vector<TrainingPair>> found(n);
  std::vector<ExtractReport> local(n);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    if (!e[i].ok)
      return;
    ExtractReport &r = local[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !e[j].ok || e[j].smiles == e[i].smiles)
        continue;
      ++r.candidates;
      const double sim = props::tanimoto(e[i].fp, e[j].fp);
      if (sim < opts.sim_min) {
        ++r.sim_rejected;
        continue;
      }
      const double delta = e[j].score - e[i].score;
      if (delta < opts.delta_min) {
        ++r.prop_rejected;
        continue;
      }
      const int cap = opts.limits.ged.max_nodes;
      if (e[i].tree.num_nodes() > cap || e[j].tree.num_nodes() > cap) {
        ++r.size_rejected;
        continue;
      }
      TrainingPair p;
      p.mx_smiles = e[i].smiles;
      p.my_smiles = e[j].smiles;
      p.mx = e[i].mol;
      p.my = e[j].mol;
      p.tx = e[i].tree;
      p.ty = e[j].tree;
      p.path = tree_edit_distance(p.tx, p.ty, opts.limits.ged);
      p.sim = sim;
      p.prop_delta = delta;
      const auto sites = disconnection_sites(p.path, to_labeled(p.tx),
                                             to_labeled(p.ty));
      ++r.site_histogram[static_cast<int>(sites.size())];
      const DeriveStatus st = derive_first_edit(p, vocab, opts.limits);
      ++r.derive_status[to_string(st)];
      if (st == DeriveStatus::kOk)
        found[i].push_back(std::move(p));
    }
  });

  std::vector<TrainingPair> out;
  ExtractReport total;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto &p: found[i])
      out.push_back(std::move(p));
    total.candidates += local[i].candidates;
    total.sim_rejected += local[i].sim_rejected;
    total.prop_rejected += local[i].prop_rejected;
    total.size_rejected += local[i].size_rejected;
    for (const auto &[k, v]: local[i].site_histogram)
      total.site_histogram[k] += v;
    for (const auto &[k, v]: local[i].derive_status)
      total.derive_status[k] += v;
  }
  if (report)
    *report = std::move(total);
  return out;
}

std::map<int, long long> disconnection_histogram(
    const std::vector<std::pair<std::string, std::string>> &pairs,
    const NodeVocabulary &vocab, const GedOptions &ged) {
  std::map<int, long long> h;
  for (const auto &[a, b]: pairs) {
    const TrainingPair p = make_pair_skeleton(a, b, vocab, ged);
    ++h[static_cast<int>(
        disconnection_sites(p.path, to_labeled(p.tx), to_labeled(p.ty))
            .size())];
  }
  return h;
}

void write_pairs_tsv(const std::string &path,
                     const std::vector<TrainingPair> &pairs,
                     const NodeVocabulary &vocab,
                     const std::vector<std::string> &header_comments) {
  std::ofstream out(path);
  if (!out)
    throw ChemError("cannot write pairs file: " + path);
  for (const auto &c: header_comments)
    out << "# " << c << '\n';
  out << kColumns << '\n';
  for (const auto &p: pairs) {
    std::vector<std::string> rem;
    for (int r: p.removal)
      rem.push_back(std::to_string(r));
    out << p.mx_smiles << '\t' << p.my_smiles << '\t' << p.n_d << '\t'
        << join(rem, ",") << '\t' << serialize_ops(p.ops, vocab) << '\t'
        << format_double(p.sim) << '\t' << format_double(p.prop_delta)
        << '\n';
  }
}

std::vector<TrainingPair> read_pairs_tsv(const std::string &path,
                                         const NodeVocabulary &vocab,
                                         const PairLimits &limits) {
  std::ifstream in(path);
  if (!in)
    throw ChemError("cannot open pairs file: " + path);
  std::vector<TrainingPair> out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (trim(line).empty() || line[0] == '#')
      continue;
    if (!header_seen) {
      header_seen = true;
      if (line == kColumns)
        continue;
    }
    try {
      const auto f = split(line, '\t');
      if (f.size() != 7)
        throw ChemError("expected 7 columns, found "
                        + std::to_string(f.size()));
      TrainingPair p = make_pair_skeleton(f[0], f[1], vocab, limits.ged);
      p.n_d = to_int(f[2], "n_d index");
      if (!trim(f[3]).empty())
        for (const auto &s: split(f[3], ','))
          p.removal.push_back(to_int(s, "removal index"));
      p.ops = parse_ops(f[4], vocab);
      if (!parse_double(f[5], p.sim) || !parse_double(f[6], p.prop_delta))
        throw ChemError("bad numeric column");
      TrainingPair d = p;
      if (derive_first_edit(d, vocab, limits) != DeriveStatus::kOk || d.n_d != p.n_d
          || d.removal != p.removal || d.ops != p.ops)
        throw ChemError("row does not match the edit derived from its "
                        "molecules");
      d.sim = p.sim;
      d.prop_delta = p.prop_delta;
      out.push_back(std::move(d));
    } catch (const ChemError &err) {
      throw ChemError(path + ":" + std::to_string(lineno) + ": "
                      + err.what());
    }
  }
  return out;
}

std::vector<bool> asymmetric_nodes(const Molecule &m, const JunctionTree &t) {
  const int n = t.num_nodes();
  std::map<std::string, int> ids;
  std::vector<int> color(n);
  for (int u = 0; u < n; ++u) {
    const std::string d = chem::node_descriptor(m, t.nodes[u]);
    color[u] = ids.emplace(d, static_cast<int>(ids.size())).first->second;
  }
  int classes = static_cast<int>(ids.size());
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> sig;
    std::vector<int> next(n);
    for (int u = 0; u < n; ++u) {
      std::vector<int> nb;
      for (int w: t.neighbors(u))
        nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      next[u] = sig.emplace(std::make_pair(color[u], nb),
                            static_cast<int>(sig.size()))
                    .first->second;
    }
    const int c = static_cast<int>(sig.size());
    color = std::move(next);
    if (c == classes)
      break;
    classes = c;
  }
  std::vector<int> count(classes, 0);
  for (int c: color)
    ++count[c];
  std::vector<bool> out(n);
  for (int u = 0; u < n; ++u)
    out[u] = count[color[u]] == 1;
  return out;
}

namespace {

// Same tree as im.tree once atoms are carried over to `y`.
bool tree_preserved(const IntermediateMol &im, const Molecule &y,
                    const JunctionTree &ty) {
  if (ty.num_nodes() != im.tree.num_nodes()
      || ty.edges.size() != im.tree.edges.size())
    return false;
  const auto compat = [&](int a, int b) {
    return im.mol.atom(a).element == y.atom(b).element
           && im.mol.atom(a).charge == y.atom(b).charge;
  };
  chem::IsoOptions o;
  o.max_steps = 200000;
  const auto iso = chem::find_isomorphism(im.mol, y, compat, o);
  if (!iso)
    return false;
  std::map<std::vector<int>, int> y_index;
  for (int n = 0; n < ty.num_nodes(); ++n)
    y_index[ty.nodes[n].atoms] = n;
  std::vector<int> node_map(im.tree.num_nodes());
  for (int n = 0; n < im.tree.num_nodes(); ++n) {
    std::vector<int> atoms;
    for (int a: im.tree.nodes[n].atoms)
      atoms.push_back((*iso)[a]);
    std::sort(atoms.begin(), atoms.end());
    const auto it = y_index.find(atoms);
    if (it == y_index.end())
      return false;
    node_map[n] = it->second;
  }
  std::set<std::pair<int, int>> edges(ty.edges.begin(), ty.edges.end());
  for (const auto &[u, v]: im.tree.edges) {
    const auto e = std::minmax(node_map[u], node_map[v]);
    if (!edges.count({ e.first, e.second }))
      return false;
  }
  return true;
}

}  // namespace

std::optional<PlantedEdit> plant_edit(const Molecule &mx,
                                      const std::vector<std::string> &fragments,
                                      Rng &rng, const PlantOptions &opts) {
  if (fragments.empty())
    return std::nullopt;
  const NodeVocabulary vocab = NodeVocabulary::from_descriptors(fragments);
  const std::string xs = chem::write_smiles(mx);
  const Molecule x = chem::parse_smiles(xs);
  const JunctionTree tx = chem::decompose(x);
  const auto asym = asymmetric_nodes(x, tx);
  std::vector<int> sites;
  for (int u = 0; u < tx.num_nodes(); ++u)
    if (asym[u] && tx.nodes[u].kind != chem::NodeKind::kAtom)
      sites.push_back(u);
  if (sites.empty())
    return std::nullopt;

  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    const int n_d = sites[rng.below(sites.size())];
    std::vector<int> removal;
    std::set<std::string> removed_kinds;
    if (!tx.neighbors(n_d).empty() && rng.uniform() < opts.remove_probability) {
      const auto &nb = tx.neighbors(n_d);
      removal = tx.branch(nb[rng.below(nb.size())], n_d);
      if (removal.size() > opts.max_removal_fraction * tx.num_nodes())
        removal.clear();
      for (int u: removal)
        removed_kinds.insert(chem::node_descriptor(x, tx.nodes[u]));
    }
    int nd_im = -1;
    IntermediateMol im = chem::remove_subtrees(x, tx, n_d, removal, &nd_im);
    const int count = 1 + static_cast<int>(rng.below(opts.max_attach));
    std::vector<std::string> attached;
    bool ok = true;
    int last = nd_im;
    for (int k = 0; k < count && ok; ++k) {
      const int parent = (k > 0 && rng.uniform() < 0.5) ? last : nd_im;
      const int type = static_cast<int>(rng.below(vocab.size()));
      const std::string &desc = vocab.at(type).descriptor;
      if (removed_kinds.count(desc)) {
        ok = false;
        break;
      }
      const auto cands =
          chem::enumerate_attachment_candidates(im, vocab, parent, type);
      if (cands.empty()) {
        ok = false;
        break;
      }
      const std::size_t i = rng.below(cands.parent.size());
      const std::size_t j = rng.below(cands.children[i].size());
      last = chem::attach_node(im, vocab, parent, type, cands.parent[i],
                               cands.children[i][j]);
      attached.push_back(desc);
    }
    if (!ok || im.mol.num_atoms() > opts.max_atoms
        || !chem::valence_check(im.mol).empty())
      continue;
    std::string ys;
    Molecule y;
    try {
      ys = chem::write_smiles(im.mol);
      y = chem::parse_smiles(ys);
    } catch (const ChemError &) {
      continue;
    }
    if (ys == xs || !tree_preserved(im, y, chem::decompose(y)))
      continue;
    std::sort(removal.begin(), removal.end());
    return PlantedEdit{ xs, ys, n_d, removal, attached };
  }
  return std::nullopt;
}

}  // namespace modof::pairgen
