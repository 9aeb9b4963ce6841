//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.
//

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/test_util.h"
#include "modof/chem/isomorphism.h"
#include "modof/chem/rings.h"
#include "modof/chem/smiles.h"
#include "modof/net/train.h"
#include "modof/pairgen/ged.h"
#include "modof/pairgen/pairs.h"
#include "modof/pipe/pipe.h"
#include "modof/props/fingerprint.h"
#include "modof/props/plogp.h"

namespace modof {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Shared state built once.
struct Fixture {
  std::vector<std::string> corpus;
  std::vector<chem::Molecule> mols;
  chem::NodeVocabulary vocab;
  props::PlogpScorer scorer;
  std::vector<pairgen::TrainingPair> gain_pairs;  // property-improving
};

Fixture &fixture() {
  static Fixture f = [] {
    Fixture x;
    x.corpus = testing::fixture_corpus();
    x.mols = testing::parse_all(x.corpus);
    x.vocab = chem::build_vocabulary(x.mols);
    x.scorer = props::PlogpScorer(props::calibrate(x.mols));
    pairgen::ExtractOptions eo;
    eo.sim_min = 0.6;
    eo.delta_min = 0.0;
    x.gain_pairs = pairgen::extract_pairs(x.corpus, x.vocab, x.scorer, eo);
    return x;
  }();
  return f;
}

const std::vector<std::string> kFragments = {
  "CC", "CO", "CN", "C=O", "CCl", "CF", "c1ccccc1", "C1CC1", "c1ccncc1",
  "C1CCNCC1", "CS", "C#N",
};

// Planted pairs over corpus seeds, with their recorded site.
std::vector<pairgen::PlantedEdit> planted(int count, std::uint64_t seed,
                                          int max_atoms) {
  const Fixture &f = fixture();
  pairgen::PlantOptions po;
  po.max_atoms = max_atoms;
  Rng rng(seed);
  std::vector<pairgen::PlantedEdit> out;
  for (std::size_t i = 0; static_cast<int>(out.size()) < count && i < 20000;
       ++i) {
    const auto &mx = f.mols[i % f.mols.size()];
    if (mx.num_atoms() > max_atoms)
      continue;
    auto e = pairgen::plant_edit(mx, kFragments, rng, po);
    if (e)
      out.push_back(std::move(*e));
  }
  return out;
}

struct PairSet {
  chem::NodeVocabulary vocab;
  std::vector<pairgen::TrainingPair> pairs;
};

PairSet derive_all(const std::vector<std::pair<std::string, std::string>> &raw) {
  std::vector<chem::Molecule> all;
  for (const auto &[a, b]: raw) {
    all.push_back(chem::parse_smiles(a));
    all.push_back(chem::parse_smiles(b));
  }
  PairSet s;
  s.vocab = chem::build_vocabulary(all);
  for (const auto &[a, b]: raw) {
    auto p = pairgen::make_pair_skeleton(a, b, s.vocab);
    if (pairgen::derive_first_edit(p, s.vocab) == pairgen::DeriveStatus::kOk)
      s.pairs.push_back(std::move(p));
  }
  return s;
}

// 1: analytic gradient of the full loss against central differences.
Outcome gradient_check() {
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, std::string>> raw;
  for (const auto &e: planted(400, 17, 9)) {
    const int na = chem::parse_smiles(e.mx_smiles).num_atoms();
    const int nb = chem::parse_smiles(e.my_smiles).num_atoms();
    if (na >= 5 && na <= 12 && nb >= 5 && nb <= 12)
      raw.emplace_back(e.mx_smiles, e.my_smiles);
    if (raw.size() == 12)
      break;
  }
  PairSet s = derive_all(raw);
  net::HyperParams hp;
  hp.hidden = 8;
  hp.z_dim = 4;
  hp.t_a = 2;
  hp.t_n = 2;
  net::Model m(hp, s.vocab.size());
  Rng init(1);
  m.init(init);
  double worst = 0.0;
  int checked = 0;
  Rng pick(2);
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto &p = s.pairs[i];
    const auto f = [&](tensor::Tape &t) {
      Rng noise(1000 + i);
      return net::pair_loss(t, m, p, s.vocab, 0.3, &noise).total;
    };
    worst = std::max(worst,
                     tensor::grad_check(m.params(), f, 1e-5, 400, &pick)
                         .max_rel_error);
    ++checked;
  }
  const double secs = seconds_since(t0);
  return { checked >= 10 && worst < 1e-4 && secs < 60,
           std::to_string(checked) + " pairs, max rel error "
               + fmt("%.2e", worst) + ", " + fmt("%.1f", secs) + " s" };
}

// 2: tree edit distance against exhaustive search.
Outcome ged_vs_brute_force() {
  const auto t0 = Clock::now();
  Rng rng(23);
  const auto tree = [&](int n) {
    pairgen::LabeledGraph g;
    for (int i = 0; i < n; ++i) {
      g.labels.push_back(static_cast<int>(rng.below(3)));
      if (i > 0)
        g.edges.emplace_back(static_cast<int>(rng.below(i)), i);
    }
    return g;
  };
  int agree = 0;
  const int trials = 600;
  for (int i = 0; i < trials; ++i) {
    const int nx = 1 + static_cast<int>(rng.below(11));
    const int ny = 1 + static_cast<int>(rng.below(12 - nx));
    const auto x = tree(nx), y = tree(ny);
    if (pairgen::tree_edit_distance(x, y).cost == pairgen::brute_force_ged(x, y))
      ++agree;
  }
  const double secs = seconds_since(t0);
  return { agree == trials && secs < 120,
           std::to_string(agree) + "/" + std::to_string(trials)
               + " trees agree, " + fmt("%.1f", secs) + " s" };
}

// 3: every derived edit replays to the target molecule.
Outcome replay_soundness() {
  const Fixture &f = fixture();
  pairgen::ExtractOptions eo;
  eo.sim_min = 0.6;
  eo.delta_min = -1e9;
  pairgen::ExtractReport rep;
  const auto pairs =
      pairgen::extract_pairs(f.corpus, f.vocab, f.scorer, eo, &rep);
  int ok = 0;
  for (const auto &p: pairs)
    if (chem::are_isomorphic(pairgen::replay(p, f.vocab).mol, p.my))
      ++ok;
  long long underived = 0;
  for (const auto &[k, v]: rep.derive_status)
    if (k != "ok")
      underived += v;
  return { !pairs.empty() && ok == static_cast<int>(pairs.size()),
           std::to_string(ok) + "/" + std::to_string(pairs.size())
               + " replays match over " + std::to_string(f.corpus.size())
               + " molecules (" + std::to_string(underived)
               + " candidate pairs had no derivable single-site edit)" };
}

// 4: a small model memorizes 50 planted edits.
Outcome overfit() {
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, std::string>> raw;
  for (const auto &e: planted(50, 42, 30))
    raw.emplace_back(e.mx_smiles, e.my_smiles);
  PairSet s = derive_all(raw);
  net::HyperParams hp;
  hp.hidden = 64;
  hp.z_dim = 16;
  hp.t_a = 3;
  hp.t_n = 2;
  hp.epochs = 200;
  hp.batch = 10;
  net::Model m(hp, s.vocab.size());
  Rng init(7);
  m.init(init);
  net::TrainOptions o;
  o.seed = 1;
  o.threads = 1;
  net::HeadStats last;
  int reached = -1;
  o.on_epoch = [&](const net::TrainState &st, net::Model &mm) {
    if (st.epoch % 5 != 0)
      return true;
    last = net::evaluate(mm, s.pairs, s.vocab);
    for (int h = 0; h < net::kNumHeads; ++h)
      if (last.accuracy(static_cast<net::Head>(h)) < 0.95)
        return true;
    reached = st.epoch;
    return false;
  };
  net::train(m, s.pairs, s.vocab, o);
  const double secs = seconds_since(t0);
  std::string detail = std::to_string(s.pairs.size()) + " pairs";
  detail += reached > 0 ? ", all heads >= 95% at epoch " + std::to_string(reached)
                        : ", not reached in 200 epochs";
  for (int h = 0; h < net::kNumHeads; ++h)
    detail += std::string(" ") + net::head_name(static_cast<net::Head>(h))
              + "=" + fmt("%.3f", last.accuracy(static_cast<net::Head>(h)));
  detail += ", " + fmt("%.1f", secs) + " s";
  return { s.pairs.size() == 50 && reached > 0 && secs < 600, detail };
}

net::Model &trained_model() {
  static net::Model m = [] {
    const Fixture &f = fixture();
    net::HyperParams hp;
    hp.hidden = 32;
    hp.z_dim = 8;
    hp.t_a = 3;
    hp.t_n = 2;
    hp.epochs = 20;
    hp.batch = 8;
    net::Model model(hp, f.vocab.size());
    Rng init(3);
    model.init(init);
    net::TrainOptions o;
    o.seed = 5;
    net::train(model, f.gain_pairs, f.vocab, o);
    return model;
  }();
  return m;
}

// 5: decoded molecules respect valence rules and the atom cap.
Outcome free_decodes() {
  const auto t0 = Clock::now();
  const Fixture &f = fixture();
  net::Model &m = trained_model();
  std::vector<chem::JunctionTree> trees;
  for (const auto &x: f.mols)
    trees.push_back(chem::junction_tree(x, f.vocab));
  const int n = 10000;
  int violations = 0, oversized = 0, fallbacks = 0, changed = 0;
  Rng root(99);
  for (int i = 0; i < n; ++i) {
    const std::size_t k = i % f.mols.size();
    Rng rng = root.split(i);
    const auto d = net::sample_decode(m, f.vocab, f.mols[k], trees[k], rng);
    if (!chem::valence_check(d.mol).empty())
      ++violations;
    if (d.mol.num_atoms() > 38)
      ++oversized;
    fallbacks += d.failed;
    changed += !d.failed && d.smiles != chem::write_smiles(f.mols[k]);
  }
  return { violations == 0 && oversized == 0,
           std::to_string(n) + " decodes: " + std::to_string(violations)
               + " valence violations, " + std::to_string(oversized)
               + " over 38 atoms (" + std::to_string(changed)
               + " modified, " + std::to_string(fallbacks)
               + " rejected in-decoder), " + fmt("%.1f", seconds_since(t0))
               + " s" };
}

// 6: similarity floor, monotone chain, multi-output dominance.
Outcome pipeline() {
  const auto t0 = Clock::now();
  const Fixture &f = fixture();
  net::Model &m = trained_model();
  std::vector<std::string> inputs;
  for (std::size_t i = 0; i < f.corpus.size() && inputs.size() < 40; i += 5)
    inputs.push_back(f.corpus[i]);
  bool sim_ok = true, mono_ok = true, dom_ok = true;
  std::string detail;
  for (double delta: { 0.2, 0.4, 0.6 }) {
    pipe::PipeConfig cfg;
    cfg.delta = delta;
    cfg.K = 10;
    cfg.max_iters = 3;
    cfg.m = 3;
    cfg.b = 5;
    cfg.scorer = &f.scorer;
    int dominated = 0, improved = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const Rng rng = Rng(7).split(i);
      const auto a = pipe::modof_pipe(inputs[i], m, f.vocab, cfg, rng);
      const auto b = pipe::modof_pipe_m(inputs[i], m, f.vocab, cfg, rng);
      for (const auto *r: { &a, &b })
        for (const auto &o: r->outputs)
          sim_ok = sim_ok && o.sim >= delta;
      double prev = a.input_score;
      for (double s: a.accepted_scores) {
        mono_ok = mono_ok && s > prev;
        prev = s;
      }
      improved += !a.noop;
      dominated += b.outputs.front().score >= a.outputs.front().score;
    }
    const double frac = static_cast<double>(dominated) / inputs.size();
    dom_ok = dom_ok && frac >= 0.95;
    detail += "delta " + fmt("%.1f", delta) + ": multi>=single "
              + fmt("%.3f", frac) + ", improved "
              + std::to_string(improved) + "/"
              + std::to_string(inputs.size()) + "; ";
  }
  detail += std::string("sim floor ") + (sim_ok ? "held" : "BROKEN")
            + ", chain " + (mono_ok ? "monotone" : "NOT monotone") + ", "
            + fmt("%.1f", seconds_since(t0)) + " s";
  return { sim_ok && mono_ok && dom_ok, detail };
}

// 7: KL weight used during training matches the step rule exactly.
Outcome beta_schedule() {
  const Fixture &f = fixture();
  std::vector<pairgen::TrainingPair> pairs(
      f.gain_pairs.begin(),
      f.gain_pairs.begin() + std::min<std::size_t>(10, f.gain_pairs.size()));
  net::HyperParams hp;
  hp.hidden = 2;
  hp.z_dim = 1;
  hp.t_a = 1;
  hp.t_n = 1;
  hp.batch = 1;
  const long long per_epoch = static_cast<long long>(pairs.size());
  hp.epochs = static_cast<int>(4600 / per_epoch + 2);
  net::Model m(hp, f.vocab.size());
  Rng init(1);
  m.init(init);
  const auto oracle = [](int epoch, long long post) {
    if (epoch == 1)
      return 0.1;
    return std::min(0.1 + 0.05 * static_cast<double>(post / 500), 0.5);
  };
  long long seen = 0, post = 0, mismatches = 0;
  double final_beta = 0.0;
  net::TrainOptions o;
  o.on_batch = [&](const net::BatchRecord &r) {
    if (r.beta != oracle(r.epoch, post))
      ++mismatches;
    if (r.epoch > 1)
      ++post;
    ++seen;
    final_beta = r.beta;
  };
  net::train(m, pairs, f.vocab, o);
  long long table_mismatch = 0;
  for (int e = 1; e <= 3; ++e)
    for (long long n = 0; n < 6000; ++n)
      table_mismatch += net::beta_at(hp, e, n) != oracle(e, n);
  return { mismatches == 0 && table_mismatch == 0 && post >= 4000
               && final_beta == 0.5,
           std::to_string(seen) + " training batches, "
               + std::to_string(mismatches) + " mismatches in training, "
               + std::to_string(table_mismatch)
               + " in the 18000-entry table, final beta "
               + fmt("%.2f", final_beta) };
}

// 8: property components on the corpus.
Outcome property_components() {
  const Fixture &f = fixture();
  int acyclic = 0, cycle_bad = 0, self_bad = 0, perm_bad = 0;
  Rng rng(8);
  std::vector<chem::Molecule> mols = f.mols;
  for (const char *s: { "CCCCCCCC", "CC(C)(C)CO", "OCC(O)CO", "CC(=O)NCCS",
                        "C=CC#N", "CCOC(=O)C(N)CC(C)C" })
    mols.push_back(chem::parse_smiles(s));
  for (const auto &m: mols) {
    if (chem::sssr(m).empty()) {
      ++acyclic;
      cycle_bad += props::cycle_score(m) != 0.0;
    }
    const auto fp = props::morgan_fp(m);
    self_bad += props::tanimoto(fp, fp) != 1.0;
    for (int k = 0; k < 100; ++k) {
      const auto perm = testing::random_permutation(m.num_atoms(), rng);
      perm_bad += !(props::morgan_fp(m.permuted(perm)) == fp);
    }
  }
  return { acyclic > 0 && cycle_bad == 0 && self_bad == 0 && perm_bad == 0,
           std::to_string(acyclic) + " acyclic molecules with nonzero cycle "
               + "score: " + std::to_string(cycle_bad)
               + "; self-similarity != 1: " + std::to_string(self_bad)
               + "; fingerprints changed by " + std::to_string(100 * mols.size())
               + " permutations: " + std::to_string(perm_bad) };
}

// 9: the disconnection site of a planted edit is recovered.
Outcome site_recovery() {
  int hits = 0, total = 0;
  for (const auto &e: planted(100, 31, 38)) {
    const auto mx = chem::parse_smiles(e.mx_smiles);
    const auto my = chem::parse_smiles(e.my_smiles);
    const std::vector<chem::Molecule> both{ mx, my };
    const auto vocab = chem::build_vocabulary(both);
    const auto x = pairgen::to_labeled(chem::junction_tree(mx, vocab));
    const auto y = pairgen::to_labeled(chem::junction_tree(my, vocab));
    const auto path = pairgen::tree_edit_distance(x, y);
    hits += pairgen::disconnection_sites(path, x, y) == std::vector<int>{ e.n_d };
    ++total;
  }
  return { total == 100 && hits == total,
           std::to_string(hits) + "/" + std::to_string(total)
               + " planted sites recovered" };
}

int run(const std::string &args) {
  const std::string cmd =
      std::string(MODOF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10: two optimize runs with the same seed write identical files.
Outcome reproducible_cli() {
  testing::TempDir dir("acceptance");
  const std::string corpus =
      std::string(MODOF_TEST_DATA) + "/fixture_corpus.smi";
  const std::string pairs = dir.file("pairs.tsv");
  const std::string model = dir.file("model.ckpt");
  if (run("pairs " + corpus + " -o " + pairs + " --sim 0.6") != 0
      || run("train " + pairs + " -o " + model
             + " --hidden 16 --z_dim 4 --t_a 2 --t_n 2 --epochs 2 --seed 3")
             != 0)
    return { false, "could not prepare a model through the CLI" };
  std::vector<std::string> files[2];
  for (int r = 0; r < 2; ++r) {
    const std::string tag = std::to_string(r);
    const std::string out = dir.file("results" + tag + ".tsv");
    const std::string trace = dir.file("trace" + tag + ".tsv");
    const std::string summary = dir.file("summary" + tag + ".tsv");
    if (run("optimize " + corpus + " --model " + model
            + " --k 5 --m 3 --b 5 --iters 2 --seed 7 --multi -o " + out
            + " --trace " + trace + " --summary " + summary)
        != 0)
      return { false, "optimize failed" };
    files[r] = { slurp(out), slurp(trace), slurp(summary) };
  }
  const bool same = files[0] == files[1] && !files[0][0].empty();
  return { same, std::string("results, trace and summary ")
                     + (same ? "byte-identical" : "DIFFER") + " ("
                     + std::to_string(files[0][0].size()) + " bytes of results)" };
}

}  // namespace
}  // namespace modof

int main() {
  using namespace modof;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
    { "gradient check", gradient_check },
    { "edit distance vs brute force", ged_vs_brute_force },
    { "replay soundness", replay_soundness },
    { "overfit planted pairs", overfit },
    { "free decodes valid", free_decodes },
    { "pipeline invariants", pipeline },
    { "beta schedule", beta_schedule },
    { "property components", property_components },
    { "disconnection site recovery", site_recovery },
    { "reproducible optimize", reproducible_cli },
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception &e) {
      o = { false, std::string("exception: ") + e.what() };
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                checks[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
