//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/net/train.h"

#include <cmath>
#include <fstream>
#include <numeric>

#include "modof/tensor/checkpoint.h"
#include "modof/util/parallel.h"
#include "modof/util/text.h"

namespace modof::net {

using namespace tensor;

namespace {

struct PairResult {
  GradBuffers grads;
  double loss = 0.0, kl = 0.0;
  std::array<double, kNumHeads> head{};
};

void write_log_header(std::ostream &out) {
  out << "epoch\tbatch\tbeta\tloss\tkl";
  for (int h = 0; h < kNumHeads; ++h)
    out << '\t' << head_name(static_cast<Head>(h));
  out << '\n';
}

void write_log_row(std::ostream &out, const BatchRecord &r) {
  out << r.epoch << '\t' << r.batch << '\t' << format_double(r.beta) << '\t'
      << format_double(r.loss) << '\t' << format_double(r.kl);
  for (double v: r.head)
    out << '\t' << format_double(v);
  out << '\n';
}

bool all_finite(const ParamStore &ps) {
  for (int i = 0; i < ps.size(); ++i)
    if (!ps.at(i).value.allFinite())
      return false;
  return true;
}

}  // namespace

TrainState train(Model &m, const std::vector<pairgen::TrainingPair> &pairs,
                 const chem::NodeVocabulary &vocab, const TrainOptions &opts,
                 TrainState state) {
  const HyperParams &hp = m.hp();
  if (pairs.empty())
    throw std::invalid_argument("no training pairs");
  std::ofstream log;
  if (!opts.log_path.empty()) {
    log.open(opts.log_path, state.epoch == 0 ? std::ios::trunc : std::ios::app);
    if (!log)
      throw std::runtime_error("cannot write training log: " + opts.log_path);
    if (state.epoch == 0) {
      for (const auto &c: opts.log_comments)
        log << "# " << c << '\n';
      write_log_header(log);
    }
  }
  const Rng root(opts.seed);
  AmsGradOptions adam;
  adam.lr = hp.lr;

  for (int epoch = state.epoch + 1; epoch <= hp.epochs; ++epoch) {
    const Rng erng = root.split(static_cast<std::uint64_t>(epoch));
    std::vector<int> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle = erng.split(0);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle.below(i)]);

    for (std::size_t lo = 0; lo < order.size();
         lo += static_cast<std::size_t>(hp.batch)) {
      const std::size_t hi =
          std::min(order.size(), lo + static_cast<std::size_t>(hp.batch));
      const double beta = beta_at(hp, epoch, state.post_epoch1_batches);
      std::vector<PairResult> res(hi - lo);
      parallel_for(hi - lo, opts.threads, [&](std::size_t k) {
        const int idx = order[lo + k];
        Rng noise = erng.split(static_cast<std::uint64_t>(idx) + 1);
        Tape t;
        PairLoss pl = pair_loss(t, m, pairs[idx], vocab, beta, &noise);
        const double v = pl.total.scalar();
        if (!std::isfinite(v))
          throw NumericError("non-finite loss at epoch "
                             + std::to_string(epoch) + " on pair "
                             + std::to_string(idx) + " ("
                             + pairs[idx].mx_smiles + " -> "
                             + pairs[idx].my_smiles + ")");
        t.backward(pl.total, &res[k].grads);
        res[k].loss = v;
        res[k].kl = pl.kl;
        res[k].head = pl.head;
      });

      ParamStore &ps = m.params();
      ps.zero_grad();
      const double w = 1.0 / static_cast<double>(res.size());
      BatchRecord rec;
      rec.epoch = epoch;
      rec.batch = state.batches + 1;
      rec.beta = beta;
      for (const auto &r: res) {
        ps.accumulate(r.grads, w);
        rec.loss += r.loss * w;
        rec.kl += r.kl * w;
        for (int h = 0; h < kNumHeads; ++h)
          rec.head[h] += r.head[h] * w;
      }
      amsgrad_step(ps, adam);
      if (!all_finite(ps))
        throw NumericError("non-finite parameters after batch "
                           + std::to_string(rec.batch));
      ++state.batches;
      if (epoch > 1)
        ++state.post_epoch1_batches;
      if (log)
        write_log_row(log, rec);
      if (opts.on_batch)
        opts.on_batch(rec);
    }
    state.epoch = epoch;
    if (log)
      log.flush();
    if (!opts.checkpoint_path.empty())
      save_model(opts.checkpoint_path, m, vocab, state);
    if (opts.on_epoch && !opts.on_epoch(state, m))
      break;
  }
  return state;
}

HeadStats evaluate(Model &m, const std::vector<pairgen::TrainingPair> &pairs,
                   const chem::NodeVocabulary &vocab, int threads) {
  std::vector<HeadStats> per(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    per[i] = teacher_accuracy(m, pairs[i], vocab);
  });
  HeadStats all;
  for (const auto &s: per)
    all.merge(s);
  return all;
}

void save_model(const std::string &path, const Model &m,
                const chem::NodeVocabulary &vocab, const TrainState &state,
                bool optimizer) {
  const HyperParams &hp = m.hp();
  Checkpoint c;
  c.vocab_hash = vocab.hash();
  c.meta["kind"] = "modof-model";
  c.meta["vocab_size"] = std::to_string(m.vocab_size());
  c.meta["hidden"] = std::to_string(hp.hidden);
  c.meta["z_dim"] = std::to_string(hp.z_dim);
  c.meta["t_a"] = std::to_string(hp.t_a);
  c.meta["t_n"] = std::to_string(hp.t_n);
  c.meta["max_atoms"] = std::to_string(hp.max_atoms);
  c.meta["beta_init"] = format_double(hp.beta_init);
  c.meta["beta_step"] = format_double(hp.beta_step);
  c.meta["beta_every"] = std::to_string(hp.beta_every);
  c.meta["beta_cap"] = format_double(hp.beta_cap);
  c.meta["lr"] = format_double(hp.lr);
  c.meta["batch"] = std::to_string(hp.batch);
  c.meta["epochs"] = std::to_string(hp.epochs);
  c.meta["max_children"] = std::to_string(hp.max_children);
  c.meta["max_attachments"] = std::to_string(hp.max_attachments);
  c.meta["epoch"] = std::to_string(state.epoch);
  c.meta["batches"] = std::to_string(state.batches);
  c.meta["post_epoch1_batches"] = std::to_string(state.post_epoch1_batches);
  store_params(c, m.params(), optimizer);
  save_checkpoint(path, c);
}

Model load_model(const std::string &path, const chem::NodeVocabulary &vocab,
                 TrainState *state) {
  const Checkpoint c = load_checkpoint(path);
  const auto get = [&](const std::string &k) -> const std::string & {
    const auto it = c.meta.find(k);
    if (it == c.meta.end())
      throw ModelMismatch("checkpoint lacks field '" + k + "': " + path);
    return it->second;
  };
  if (get("kind") != "modof-model")
    throw ModelMismatch("not a model checkpoint: " + path);
  if (c.vocab_hash != vocab.hash())
    throw ModelMismatch("checkpoint was trained with a different vocabulary"
                        " (hash mismatch): " + path);
  const auto ll = [&](const std::string &k) {
    long long v = 0;
    if (!parse_int(get(k), v))
      throw ModelMismatch("bad checkpoint field '" + k + "': " + path);
    return v;
  };
  const auto i = [&](const std::string &k) { return static_cast<int>(ll(k)); };
  const auto d = [&](const std::string &k) {
    double v = 0;
    if (!parse_double(get(k), v))
      throw ModelMismatch("bad checkpoint field '" + k + "': " + path);
    return v;
  };
  if (i("vocab_size") != vocab.size())
    throw ModelMismatch("checkpoint vocabulary size differs: " + path);
  HyperParams hp;
  hp.hidden = i("hidden");
  hp.z_dim = i("z_dim");
  hp.t_a = i("t_a");
  hp.t_n = i("t_n");
  hp.max_atoms = i("max_atoms");
  hp.beta_init = d("beta_init");
  hp.beta_step = d("beta_step");
  hp.beta_every = i("beta_every");
  hp.beta_cap = d("beta_cap");
  hp.lr = d("lr");
  hp.batch = i("batch");
  hp.epochs = i("epochs");
  hp.max_children = i("max_children");
  hp.max_attachments = i("max_attachments");
  Model m(hp, vocab.size());
  restore_params(c, m.params());
  if (state) {
    state->epoch = i("epoch");
    state->batches = ll("batches");
    state->post_epoch1_batches = ll("post_epoch1_batches");
  }
  return m;
}

}  // namespace modof::net
