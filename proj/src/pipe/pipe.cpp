//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/pipe/pipe.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "modof/chem/smiles.h"
#include "modof/net/decoder.h"
#include "modof/props/fingerprint.h"
#include "modof/util/parallel.h"

namespace modof::pipe {

void PipeConfig::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must lie in [0, 1]");
  if (K < 1)
    throw std::invalid_argument("K must be at least 1");
  if (max_iters < 0)
    throw std::invalid_argument("max_iters must be non-negative");
  if (m < 1 || m > K)
    throw std::invalid_argument("m must lie in [1, K]");
  if (b < 1)
    throw std::invalid_argument("b must be at least 1");
  if (!scorer)
    throw std::invalid_argument("no property scorer");
}

namespace {

struct Source {
  chem::Molecule mol;
  chem::JunctionTree tree;
};

struct Decoded {
  Candidate cand;
  chem::Molecule mol;
};

// Higher score first; equal scores by canonical SMILES.
bool better(const Candidate &a, const Candidate &b) {
  if (a.score != b.score)
    return a.score > b.score;
  return a.smiles < b.smiles;
}

class Context {
public:
  Context(const std::string &smiles, net::Model &model,
          const chem::NodeVocabulary &vocab, const PipeConfig &cfg)
      : model_(model), vocab_(vocab), cfg_(cfg) {
    cfg.validate();
    input_ = chem::parse_smiles(smiles);
    input_smiles_ = chem::write_smiles(input_);
    input_fp_ = props::morgan_fp(input_);
    input_score_ = cfg.scorer->score(input_);
  }

  const std::string &input_smiles() const { return input_smiles_; }
  double input_score() const { return input_score_; }
  const chem::Molecule &input() const { return input_; }

  /// Null when the molecule cannot be decomposed with the vocabulary.
  std::optional<Source> source(const chem::Molecule &m) const {
    try {
      return Source{ m, chem::junction_tree(m, vocab_) };
    } catch (const chem::ChemError &) {
      return std::nullopt;
    }
  }

  std::vector<Decoded> decode(const std::vector<Source> &sources, int t,
                              const Rng &rng) const {
    const int k_all = cfg_.K;
    std::vector<Decoded> out(sources.size() * k_all);
    parallel_for(out.size(), cfg_.threads, [&](std::size_t idx) {
      const int i = static_cast<int>(idx / k_all);
      const int k = static_cast<int>(idx % k_all);
      Rng r = rng.split(static_cast<std::uint64_t>(t))
                  .split(static_cast<std::uint64_t>(i))
                  .split(static_cast<std::uint64_t>(k));
      const net::DecodeResult d =
          net::sample_decode(model_, vocab_, sources[i].mol, sources[i].tree,
                             r);
      Decoded &o = out[idx];
      o.mol = d.mol;
      o.cand.smiles = d.smiles;
      o.cand.failed = d.failed;
      o.cand.source = i;
      o.cand.sample = k;
      o.cand.score = cfg_.scorer->score(d.mol);
      o.cand.sim = props::tanimoto(props::morgan_fp(d.mol), input_fp_);
    });
    return out;
  }

  double sim_to_input(const chem::Molecule &m) const {
    return props::tanimoto(props::morgan_fp(m), input_fp_);
  }

private:
  net::Model &model_;
  const chem::NodeVocabulary &vocab_;
  const PipeConfig &cfg_;
  chem::Molecule input_;
  std::string input_smiles_;
  props::Fingerprint input_fp_{ 2048, 2 };
  double input_score_ = 0.0;
};

OptimResult input_only(OptimResult r, bool noop) {
  r.outputs.push_back({ r.input, r.input_score, 1.0 });
  r.noop = noop;
  return r;
}

}  // namespace

OptimResult modof_pipe(const std::string &mx_smiles, net::Model &model,
                       const chem::NodeVocabulary &vocab,
                       const PipeConfig &cfg, const Rng &rng) {
  OptimResult r;
  r.input = mx_smiles;
  std::optional<Context> ctx;
  try {
    ctx.emplace(mx_smiles, model, vocab, cfg);
  } catch (const chem::ChemError &e) {
    r.error = e.what();
    return input_only(std::move(r), true);
  }
  r.input = ctx->input_smiles();
  r.input_score = ctx->input_score();
  auto cur = ctx->source(ctx->input());
  if (!cur) {
    r.error = "input has fragments outside the vocabulary";
    return input_only(std::move(r), true);
  }
  std::string cur_smiles = r.input;
  double cur_score = r.input_score;
  double cur_sim = 1.0;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    IterationTrace tr;
    tr.iteration = t;
    tr.sources = { cur_smiles };
    tr.score_before = cur_score;
    const auto decoded = ctx->decode({ *cur }, t, rng);
    const Decoded *best = nullptr;
    std::optional<Source> next;
    for (const auto &d: decoded) {
      tr.candidates.push_back(d.cand);
      if (d.cand.failed || d.cand.sim < cfg.delta)
        continue;
      if (!tr.has_candidate || d.cand.score > tr.best_candidate)
        tr.best_candidate = d.cand.score;
      tr.has_candidate = true;
      if (d.cand.score <= cur_score)
        continue;
      if (best && !better(d.cand, best->cand))
        continue;
      auto s = ctx->source(d.mol);
      if (!s)
        continue;
      best = &d;
      next = std::move(s);
    }
    if (!best) {
      tr.score_after = cur_score;
      tr.sim_after = cur_sim;
      r.iterations.push_back(std::move(tr));
      break;
    }
    tr.accepted = { best->cand.smiles };
    tr.step_sim = props::tanimoto(props::morgan_fp(cur->mol),
                                  props::morgan_fp(best->mol));
    cur = std::move(next);
    cur_smiles = best->cand.smiles;
    cur_score = best->cand.score;
    cur_sim = best->cand.sim;
    tr.score_after = cur_score;
    tr.sim_after = cur_sim;
    r.accepted_scores.push_back(cur_score);
    r.iterations.push_back(std::move(tr));
  }
  r.iterations_used = static_cast<int>(r.accepted_scores.size());
  if (r.accepted_scores.empty())
    return input_only(std::move(r), true);
  r.outputs.push_back({ cur_smiles, cur_score, cur_sim });
  return r;
}

OptimResult modof_pipe_m(const std::string &mx_smiles, net::Model &model,
                         const chem::NodeVocabulary &vocab,
                         const PipeConfig &cfg, const Rng &rng) {
  OptimResult r;
  r.input = mx_smiles;
  std::optional<Context> ctx;
  try {
    ctx.emplace(mx_smiles, model, vocab, cfg);
  } catch (const chem::ChemError &e) {
    r.error = e.what();
    return input_only(std::move(r), true);
  }
  r.input = ctx->input_smiles();
  r.input_score = ctx->input_score();
  auto first = ctx->source(ctx->input());
  if (!first) {
    r.error = "input has fragments outside the vocabulary";
    return input_only(std::move(r), true);
  }
  std::vector<Source> beam{ std::move(*first) };
  std::vector<std::string> beam_smiles{ r.input };
  std::map<std::string, Candidate> pool;  // improving candidates
  double best_so_far = r.input_score;
  double best_sim = 1.0;
  for (int t = 1; t <= cfg.max_iters && !beam.empty(); ++t) {
    IterationTrace tr;
    tr.iteration = t;
    tr.sources = beam_smiles;
    tr.score_before = best_so_far;
    const auto decoded = ctx->decode(beam, t, rng);
    std::vector<chem::Molecule> sources;
    for (const auto &b: beam)
      sources.push_back(b.mol);
    std::map<std::string, const Decoded *> unique;
    for (const auto &d: decoded) {
      tr.candidates.push_back(d.cand);
      if (d.cand.failed || d.cand.sim < cfg.delta)
        continue;
      unique.emplace(d.cand.smiles, &d);
    }
    std::vector<const Decoded *> ranked;
    for (const auto &[s, d]: unique) {
      ranked.push_back(d);
      if (!tr.has_candidate || d->cand.score > tr.best_candidate)
        tr.best_candidate = d->cand.score;
      tr.has_candidate = true;
      if (d->cand.score > r.input_score)
        pool.emplace(s, d->cand);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const Decoded *a, const Decoded *b) {
                return better(a->cand, b->cand);
              });
    beam.clear();
    beam_smiles.clear();
    for (const Decoded *d: ranked) {
      if (static_cast<int>(beam.size()) >= cfg.m)
        break;
      auto s = ctx->source(d->mol);
      if (!s)
        continue;
      beam.push_back(std::move(*s));
      beam_smiles.push_back(d->cand.smiles);
    }
    tr.accepted = beam_smiles;
    if (tr.has_candidate && tr.best_candidate > best_so_far) {
      const Decoded *top = ranked.front();
      best_so_far = tr.best_candidate;
      best_sim = top->cand.sim;
      tr.step_sim = props::tanimoto(props::morgan_fp(sources[top->cand.source]),
                                    props::morgan_fp(top->mol));
    }
    tr.score_after = best_so_far;
    tr.sim_after = best_sim;
    r.iterations.push_back(std::move(tr));
    ++r.iterations_used;
  }
  if (pool.empty())
    return input_only(std::move(r), true);
  std::vector<Candidate> all;
  for (const auto &[s, c]: pool)
    all.push_back(c);
  std::sort(all.begin(), all.end(), better);
  if (static_cast<int>(all.size()) > cfg.b)
    all.resize(cfg.b);
  for (const auto &c: all)
    r.outputs.push_back({ c.smiles, c.score, c.sim });
  return r;
}

std::vector<OptimResult> batch_optimize(const std::vector<std::string> &corpus,
                                        net::Model &model,
                                        const chem::NodeVocabulary &vocab,
                                        const PipeConfig &cfg, bool multi,
                                        std::uint64_t seed, int threads) {
  cfg.validate();
  PipeConfig inner = cfg;
  inner.threads = 1;
  const Rng root(seed);
  std::vector<OptimResult> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const Rng r = root.split(static_cast<std::uint64_t>(i));
    out[i] = multi ? modof_pipe_m(corpus[i], model, vocab, inner, r)
                   : modof_pipe(corpus[i], model, vocab, inner, r);
  });
  return out;
}

}  // namespace modof::pipe
