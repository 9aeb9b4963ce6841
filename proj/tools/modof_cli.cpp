//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "modof/cli/commands.h"
#include "modof/util/parallel.h"

using namespace modof;
using namespace modof::cli;

namespace {

// Flags that override configuration keys of the same meaning.
struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;

  void add(CLI::App *app, const std::string &flag, const std::string &key,
           const std::string &help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string &v) { values[key] = v; }, help)
        ->type_name("NUM");
  }

  Config resolve() const {
    Config c;
    c.threads = default_threads();
    if (!config.empty())
      c = Config::load(config, c);
    for (const auto &[k, v]: values)
      c.set(k, v);
    return c;
  }
};

void common(CLI::App *app, Overrides &o) {
  app->add_option("--config", o.config, "key = value configuration file");
  o.add(app, "--seed", "seed", "random seed");
  o.add(app, "--threads", "threads", "worker threads");
}

void property_flags(CLI::App *app, PropertyArgs &p) {
  app->add_option("--prop", p.prop, "plogp, logp, sa or cycle")
      ->capture_default_str();
  app->add_option("--calib", p.calib, "plogp normalization file");
  app->add_option("--sa-table", p.sa_table, "fragment score table");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "modof: fragment-level molecule optimization" };
  app.set_version_flag("--version", std::string(MODOF_VERSION));
  app.require_subcommand(1);

  Overrides o;
  ScoreArgs score;
  CalibrateArgs calib;
  PairsArgs pairs;
  TrainArgs train;
  OptimizeArgs opt;
  StatsArgs stats;

  auto *s = app.add_subcommand("score", "score every molecule of a corpus");
  s->add_option("corpus", score.corpus, "SMILES file")->required();
  s->add_option("-o,--output", score.output, "output TSV (default stdout)");
  property_flags(s, score.prop);
  common(s, o);

  auto *c = app.add_subcommand("calibrate",
                               "plogp normalization constants of a corpus");
  c->add_option("corpus", calib.corpus, "SMILES file")->required();
  c->add_option("-o,--output", calib.output, "output file (default stdout)");
  c->add_option("--sa-table", calib.sa_table, "fragment score table");
  common(c, o);

  auto *p = app.add_subcommand("pairs", "extract training pairs");
  p->add_option("corpus", pairs.corpus, "SMILES file")->required();
  p->add_option("-o,--output", pairs.output, "pairs TSV")->required();
  p->add_option("--vocab", pairs.vocab, "vocabulary output");
  p->add_option("--sim", pairs.sim, "minimum similarity")
      ->capture_default_str();
  p->add_option("--delta", pairs.delta, "minimum property gain")
      ->capture_default_str();
  p->add_option("--hist", pairs.hist, "disconnection-site histogram TSV");
  property_flags(p, pairs.prop);
  common(p, o);

  auto *t = app.add_subcommand("train", "train a model on extracted pairs");
  t->add_option("pairs", train.pairs, "pairs TSV")->required();
  t->add_option("-o,--output", train.output, "checkpoint")->required();
  t->add_option("--vocab", train.vocab, "vocabulary file");
  t->add_option("--resume", train.resume, "checkpoint to continue from");
  t->add_option("--log", train.log, "batch log TSV");
  const std::pair<const char *, const char *> train_flags[] = {
    { "hidden", "hidden width" },
    { "z_dim", "latent width per side" },
    { "t_a", "atom message-passing rounds" },
    { "t_n", "tree message-passing rounds" },
    { "lr", "learning rate" },
    { "batch", "pairs per batch" },
    { "epochs", "total epochs" },
  };
  for (const auto &[k, help]: train_flags)
    o.add(t, std::string("--") + k, k, help);
  common(t, o);

  auto *op = app.add_subcommand("optimize", "optimize every corpus molecule");
  op->add_option("corpus", opt.corpus, "SMILES file")->required();
  op->add_option("--model", opt.model, "checkpoint")->required();
  op->add_option("--vocab", opt.vocab, "vocabulary file");
  op->add_option("-o,--output", opt.output, "results TSV (default stdout)");
  op->add_option("--trace", opt.trace, "per-candidate trace TSV");
  op->add_option("--summary", opt.summary, "per-iteration summary TSV");
  op->add_flag("--multi", opt.multi, "beam variant with several outputs");
  o.add(op, "--delta", "delta", "similarity threshold");
  o.add(op, "--k", "k", "decodes per iteration");
  o.add(op, "--iters", "iters", "maximum iterations");
  o.add(op, "--m", "m", "beam width");
  o.add(op, "--b", "b", "outputs per input");
  property_flags(op, opt.prop);
  common(op, o);

  auto *st = app.add_subcommand("stats", "fragment frequency report");
  st->add_option("pairs", stats.pairs, "pairs TSV")->required();
  st->add_option("--vocab", stats.vocab, "vocabulary file");
  st->add_option("-o,--output", stats.output, "report (default stdout)");
  st->add_option("--top", stats.top, "fragments per table")
      ->capture_default_str();
  common(st, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  return guarded(
      [&]() -> int {
        const Config cfg = o.resolve();
        if (*s)
          return run_score(score, cfg, std::cerr);
        if (*c)
          return run_calibrate(calib, cfg, std::cerr);
        if (*p)
          return run_pairs(pairs, cfg, std::cerr);
        if (*t)
          return run_train(train, cfg, std::cerr);
        if (*op)
          return run_optimize(opt, cfg, std::cerr);
        return run_stats(stats, cfg, std::cerr);
      },
      std::cerr);
}
