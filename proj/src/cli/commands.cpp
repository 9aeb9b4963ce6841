//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "modof/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modof/chem/smiles.h"
#include "modof/net/train.h"
#include "modof/pairgen/stats.h"
#include "modof/pipe/report.h"
#include "modof/props/fingerprint.h"
#include "modof/tensor/checkpoint.h"
#include "modof/util/text.h"

namespace modof::cli {

namespace {

class InputError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InputError("cannot write " + path);
  return out;
}

// Writes to `path`, or stdout when it is empty.
void emit(const std::string &path,
          const std::function<void(std::ostream &)> &fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out = open_out(path);
  fn(out);
}

void comments_out(std::ostream &out, const std::vector<std::string> &c) {
  for (const auto &line: c)
    out << "# " << line << '\n';
}

props::PlogpConfig plogp_config(const PropertyArgs &a, const Config &cfg) {
  props::PlogpConfig p = cfg.plogp;
  if (!a.calib.empty()) {
    p = props::PlogpConfig::load(a.calib);
    p.max_atoms = cfg.hp.max_atoms;
  }
  p.validate();
  return p;
}

// Configuration with the calibration file, if any, merged in.
Config with_calibration(const PropertyArgs &a, Config cfg) {
  cfg.plogp = plogp_config(a, cfg);
  return cfg;
}

props::SaTable sa_table(const std::string &path) {
  return path.empty() ? props::SaTable{} : props::SaTable::load(path);
}

std::vector<chem::Molecule> parse_all(const std::vector<std::string> &s) {
  std::vector<chem::Molecule> out;
  out.reserve(s.size());
  for (const auto &x: s)
    out.push_back(chem::parse_smiles(x));
  return out;
}

}  // namespace

std::vector<std::string> read_corpus(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open corpus: " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#')
      continue;
    const std::string smiles(t.substr(0, t.find_first_of(" \t")));
    try {
      chem::parse_smiles(smiles);
    } catch (const chem::ChemError &e) {
      throw ConfigError(path + ":" + std::to_string(lineno)
                        + ": cannot parse '" + smiles + "': " + e.what());
    }
    out.push_back(smiles);
  }
  return out;
}

std::vector<std::string> header_comments(const std::string &command,
                                         const std::vector<std::string> &inputs,
                                         const Config &cfg) {
  std::vector<std::string> c;
  c.push_back(std::string("modof ") + MODOF_VERSION + " " + command);
  for (const auto &in: inputs)
    c.push_back("input: " + in);
  c.push_back("seed: " + std::to_string(cfg.seed));
  for (const auto &l: cfg.lines())
    if (l.rfind("threads", 0) != 0)
      c.push_back("config: " + l);
  return c;
}

std::unique_ptr<props::PropertyScorer> make_scorer(const PropertyArgs &a,
                                                   const Config &cfg) {
  if (a.prop == "plogp")
    return std::make_unique<props::PlogpScorer>(plogp_config(a, cfg),
                                                sa_table(a.sa_table));
  if (a.prop == "logp")
    return std::make_unique<props::LogpScorer>();
  if (a.prop == "sa") {
    auto table = std::make_shared<props::SaTable>(sa_table(a.sa_table));
    return std::make_unique<props::FunctionScorer>(
        "sa", [table](const chem::Molecule &m) {
          return props::sa_score(m, *table);
        });
  }
  if (a.prop == "cycle")
    return std::make_unique<props::FunctionScorer>(
        "cycle", [](const chem::Molecule &m) { return props::cycle_score(m); });
  throw ConfigError("unknown property '" + a.prop
                    + "' (expected plogp, logp, sa or cycle)");
}

int run_score(const ScoreArgs &a, const Config &base, std::ostream &) {
  const Config cfg = with_calibration(a.prop, base);
  const auto corpus = read_corpus(a.corpus);
  const auto scorer = make_scorer(a.prop, cfg);
  emit(a.output, [&](std::ostream &out) {
    comments_out(out, header_comments("score", { a.corpus }, cfg));
    out << "# property: " << scorer->name() << '\n';
    out << "smiles\tscore\n";
    for (const auto &s: corpus)
      out << s << '\t'
          << format_double(scorer->score(chem::parse_smiles(s))) << '\n';
  });
  return kExitOk;
}

int run_calibrate(const CalibrateArgs &a, const Config &cfg,
                  std::ostream &log) {
  const auto mols = parse_all(read_corpus(a.corpus));
  std::vector<std::string> fallbacks;
  props::PlogpConfig base = cfg.plogp;
  base.max_atoms = cfg.hp.max_atoms;
  const props::PlogpConfig p =
      props::calibrate(mols, sa_table(a.sa_table), base, &fallbacks);
  for (const auto &f: fallbacks)
    log << "warning: " << f
        << " has zero spread on this corpus; using std = 1\n";
  emit(a.output, [&](std::ostream &out) {
    comments_out(out, header_comments("calibrate", { a.corpus }, cfg));
    out << p.to_string();
  });
  return kExitOk;
}

int run_pairs(const PairsArgs &a, const Config &base, std::ostream &log) {
  const Config cfg = with_calibration(a.prop, base);
  if (a.output.empty())
    throw ConfigError("pairs needs an output path");
  const auto corpus = read_corpus(a.corpus);
  const auto mols = parse_all(corpus);
  const chem::NodeVocabulary vocab = chem::build_vocabulary(mols);
  const auto scorer = make_scorer(a.prop, cfg);
  pairgen::ExtractOptions eo;
  eo.sim_min = a.sim;
  eo.delta_min = a.delta;
  eo.threads = cfg.threads;
  eo.limits.max_children = cfg.hp.max_children;
  eo.limits.max_attachments = cfg.hp.max_attachments;
  pairgen::ExtractReport rep;
  const auto pairs = pairgen::extract_pairs(corpus, vocab, *scorer, eo, &rep);
  const std::string vocab_path = a.vocab.empty() ? a.output + ".vocab"
                                                 : a.vocab;
  vocab.save(vocab_path);
  auto header = header_comments("pairs", { a.corpus }, cfg);
  header.push_back("sim_min: " + format_double(a.sim));
  header.push_back("delta_min: " + format_double(a.delta));
  header.push_back("property: " + scorer->name());
  header.push_back("vocabulary: " + std::to_string(vocab.size())
                   + " fragments, hash " + std::to_string(vocab.hash()));
  pairgen::write_pairs_tsv(a.output, pairs, vocab, header);

  log << "candidates: " << rep.candidates << '\n'
      << "rejected by similarity: " << rep.sim_rejected << '\n'
      << "rejected by property: " << rep.prop_rejected << '\n'
      << "rejected by size: " << rep.size_rejected << '\n';
  for (const auto &[status, n]: rep.derive_status)
    log << "derive " << status << ": " << n << '\n';
  log << "pairs written: " << pairs.size() << '\n';
  if (!a.hist.empty())
    emit(a.hist, [&](std::ostream &out) {
      comments_out(out, header_comments("pairs --hist", { a.corpus }, cfg));
      out << "disconnection_sites\tpairs\n";
      for (const auto &[k, n]: rep.site_histogram)
        out << k << '\t' << n << '\n';
    });
  return kExitOk;
}

int run_train(const TrainArgs &a, const Config &cfg, std::ostream &log) {
  if (a.output.empty())
    throw ConfigError("train needs an output path");
  const std::string vocab_path = a.vocab.empty() ? a.pairs + ".vocab"
                                                 : a.vocab;
  const chem::NodeVocabulary vocab = chem::NodeVocabulary::load(vocab_path);
  pairgen::PairLimits limits;
  limits.max_children = cfg.hp.max_children;
  limits.max_attachments = cfg.hp.max_attachments;
  const auto pairs = pairgen::read_pairs_tsv(a.pairs, vocab, limits);
  if (pairs.empty())
    throw InputError("no training pairs in " + a.pairs);

  net::Model model;
  net::TrainState state;
  if (!a.resume.empty()) {
    model = net::load_model(a.resume, vocab, &state);
    model.mutable_hp().epochs = cfg.hp.epochs;
    log << "resuming after epoch " << state.epoch << '\n';
  } else {
    model = net::Model(cfg.hp, vocab.size());
    Rng init = Rng(cfg.seed).split(0);
    model.init(init);
  }
  vocab.save(a.output + ".vocab");
  net::TrainOptions to;
  to.seed = cfg.seed;
  to.threads = cfg.threads;
  to.log_path = a.log.empty() ? a.output + ".log.tsv" : a.log;
  to.checkpoint_path = a.output;
  to.on_epoch = [&](const net::TrainState &s, net::Model &m) {
    const net::HeadStats st = net::evaluate(m, pairs, vocab, cfg.threads);
    log << "epoch " << s.epoch;
    for (int h = 0; h < net::kNumHeads; ++h)
      log << ' ' << net::head_name(static_cast<net::Head>(h)) << '='
          << format_fixed(st.accuracy(static_cast<net::Head>(h)), 4);
    log << '\n';
    return true;
  };
  to.log_comments = header_comments("train", { a.pairs }, cfg);
  state = net::train(model, pairs, vocab, to, state);
  if (state.epoch == 0)
    net::save_model(a.output, model, vocab, state);
  log << "trained " << state.epoch << " epochs, " << state.batches
      << " batches\n";
  return kExitOk;
}

int run_optimize(const OptimizeArgs &a, const Config &base,
                 std::ostream &log) {
  const Config cfg = with_calibration(a.prop, base);
  const auto corpus = read_corpus(a.corpus);
  const std::string vocab_path = a.vocab.empty() ? a.model + ".vocab"
                                                 : a.vocab;
  const chem::NodeVocabulary vocab = chem::NodeVocabulary::load(vocab_path);
  net::Model model = net::load_model(a.model, vocab);
  const auto scorer = make_scorer(a.prop, cfg);
  pipe::PipeConfig pc = cfg.pipe;
  pc.scorer = scorer.get();
  pc.validate();
  const auto results = pipe::batch_optimize(corpus, model, vocab, pc,
                                            a.multi, cfg.seed, cfg.threads);
  for (const auto &r: results) {
    if (!r.error.empty())
      log << "warning: " << r.input << ": " << r.error << '\n';
    for (const auto &o: r.outputs)
      if (!(o.sim >= pc.delta) && !r.noop)
        throw std::logic_error("similarity constraint violated for "
                               + r.input);
    if (a.multi && static_cast<int>(r.outputs.size()) > pc.b)
      throw std::logic_error("too many outputs for " + r.input);
  }
  auto header = header_comments(a.multi ? "optimize --multi" : "optimize",
                                { a.corpus, a.model }, cfg);
  header.push_back("property: " + scorer->name());
  emit(a.output, [&](std::ostream &out) {
    pipe::write_results_tsv(out, results, header);
  });
  if (!a.trace.empty())
    emit(a.trace, [&](std::ostream &out) {
      pipe::write_trace_tsv(out, results, header);
    });
  if (!a.summary.empty())
    emit(a.summary, [&](std::ostream &out) {
      pipe::write_summary(out, results, pc.max_iters, header);
    });
  const pipe::Aggregate ag = pipe::aggregate(results);
  log << "inputs " << ag.inputs << ", improved " << ag.improved
      << ", imprv " << format_fixed(ag.improvement.mean, 4) << " +- "
      << format_fixed(ag.improvement.std, 4) << ", sim "
      << format_fixed(ag.sim.mean, 4) << " +- "
      << format_fixed(ag.sim.std, 4) << '\n';
  return kExitOk;
}

int run_stats(const StatsArgs &a, const Config &cfg, std::ostream &) {
  const std::string vocab_path = a.vocab.empty() ? a.pairs + ".vocab"
                                                 : a.vocab;
  const chem::NodeVocabulary vocab = chem::NodeVocabulary::load(vocab_path);
  const auto pairs = pairgen::read_pairs_tsv(a.pairs, vocab);
  const pairgen::FragmentStats st = pairgen::fragment_stats(pairs);
  emit(a.output, [&](std::ostream &out) {
    comments_out(out, header_comments("stats", { a.pairs }, cfg));
    out << "# pairs: " << st.pairs << '\n'
        << "# pairs_with_removal: " << st.pairs_with_removal << '\n'
        << "# pairs_with_attachment: " << st.pairs_with_attachment << '\n'
        << "# mean_removal_atoms: " << format_fixed(st.mean_removal_atoms, 4)
        << '\n'
        << "# mean_attachment_atoms: "
        << format_fixed(st.mean_attachment_atoms, 4) << '\n'
        << "# percentages are over all pairs, rounded to 2 decimals; a pair"
           " may contribute to several rows\n";
    out << "kind\trank\tfragment\tcount\tpercent\n";
    const auto table = [&](const char *kind,
                           const std::map<std::string, long long> &t) {
      int rank = 0;
      for (const auto &[frag, n]:
           pairgen::top_fragments(t, static_cast<std::size_t>(a.top)))
        out << kind << '\t' << ++rank << '\t' << frag << '\t' << n << '\t'
            << format_fixed(st.pairs ? 100.0 * n / st.pairs : 0.0, 2)
            << '\n';
    };
    table("removed", st.removal);
    table("attached", st.attachment);
  });
  return kExitOk;
}

int guarded(const std::function<int()> &fn, std::ostream &log) {
  try {
    return fn();
  } catch (const net::ModelMismatch &e) {
    log << "error: " << e.what() << '\n';
    return kExitModel;
  } catch (const tensor::CheckpointError &e) {
    log << "error: " << e.what() << '\n';
    return kExitModel;
  } catch (const net::NumericError &e) {
    log << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::logic_error &e) {
    // invalid_argument (configuration, parse errors) derives from it.
    log << "error: " << e.what() << '\n';
    return dynamic_cast<const std::invalid_argument *>(&e) ? kExitInput : 1;
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace modof::cli
