//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "modof/chem/smiles.h"
#include "modof/pipe/pipe.h"
#include "modof/pipe/report.h"
#include "modof/props/fingerprint.h"
#include "test_util.h"

namespace modof::pipe {
namespace {

class PipeFixture: public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    corpus_ = new std::vector<std::string>(testing::fixture_corpus());
    vocab_ = new chem::NodeVocabulary(
        chem::build_vocabulary(testing::parse_all(*corpus_)));
    net::HyperParams hp;
    hp.hidden = 16;
    hp.z_dim = 4;
    hp.t_a = 2;
    hp.t_n = 2;
    model_ = new net::Model(hp, vocab_->size());
    Rng rng(21);
    model_->init(rng);
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete vocab_;
    delete model_;
  }
  static PipeConfig config(double delta) {
    PipeConfig c;
    c.delta = delta;
    c.K = 6;
    c.max_iters = 3;
    c.m = 3;
    c.b = 5;
    c.scorer = &scorer_;
    return c;
  }
  static std::vector<std::string> *corpus_;
  static chem::NodeVocabulary *vocab_;
  static net::Model *model_;
  static props::PlogpScorer scorer_;
};

std::vector<std::string> *PipeFixture::corpus_ = nullptr;
chem::NodeVocabulary *PipeFixture::vocab_ = nullptr;
net::Model *PipeFixture::model_ = nullptr;
props::PlogpScorer PipeFixture::scorer_;

double similarity(const std::string &a, const std::string &b) {
  return props::tanimoto(props::morgan_fp(chem::parse_smiles(a)),
                         props::morgan_fp(chem::parse_smiles(b)));
}

TEST_F(PipeFixture, ConfigValidation) {
  PipeConfig c = config(0.4);
  EXPECT_NO_THROW(c.validate());
  c.delta = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config(0.4);
  c.K = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = config(0.4);
  c.scorer = nullptr;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST_F(PipeFixture, ZeroModelIsNoOp) {
  net::Model zero(model_->hp(), vocab_->size());
  const OptimResult r =
      modof_pipe((*corpus_)[0], zero, *vocab_, config(0.4), Rng(1));
  EXPECT_TRUE(r.noop);
  ASSERT_EQ(r.outputs.size(), 1u);
  EXPECT_EQ(r.outputs[0].smiles, r.input);
  EXPECT_TRUE(r.accepted_scores.empty());
}

TEST_F(PipeFixture, SingleOutputInvariants) {
  for (double delta: { 0.2, 0.6 }) {
    for (int i = 0; i < 8; ++i) {
      const OptimResult r = modof_pipe((*corpus_)[i], *model_, *vocab_,
                                       config(delta), Rng(5).split(i));
      ASSERT_TRUE(r.error.empty()) << r.error;
      ASSERT_EQ(r.outputs.size(), 1u);
      EXPECT_GE(r.outputs[0].sim, delta);
      EXPECT_NEAR(r.outputs[0].sim, similarity(r.input, r.outputs[0].smiles),
                  1e-12);
      double prev = r.input_score;
      for (double s: r.accepted_scores) {
        EXPECT_GT(s, prev);
        prev = s;
      }
      EXPECT_LE(r.iterations_used, 3);
      EXPECT_EQ(r.noop, r.accepted_scores.empty());
    }
  }
}

TEST_F(PipeFixture, MultiOutputInvariants) {
  for (int i = 0; i < 6; ++i) {
    const OptimResult r = modof_pipe_m((*corpus_)[i], *model_, *vocab_,
                                       config(0.4), Rng(6).split(i));
    ASSERT_FALSE(r.outputs.empty());
    EXPECT_LE(r.outputs.size(), 5u);
    for (std::size_t k = 0; k < r.outputs.size(); ++k) {
      EXPECT_GE(r.outputs[k].sim, 0.4);
      if (k > 0)
        EXPECT_GE(r.outputs[k - 1].score, r.outputs[k].score);
      if (!r.noop)
        EXPECT_GT(r.outputs[k].score, r.input_score);
    }
  }
}

TEST_F(PipeFixture, FullSimilarityThresholdKeepsInput) {
  const OptimResult r =
      modof_pipe((*corpus_)[3], *model_, *vocab_, config(1.0), Rng(2));
  for (const auto &o: r.outputs)
    EXPECT_DOUBLE_EQ(o.sim, 1.0);
}

TEST_F(PipeFixture, BadInputReportsError) {
  const OptimResult r =
      modof_pipe("C1CC", *model_, *vocab_, config(0.4), Rng(1));
  EXPECT_FALSE(r.error.empty());
  EXPECT_TRUE(r.noop);
  EXPECT_EQ(result_rows({ r })[0].status, "error");
}

TEST_F(PipeFixture, BatchIsDeterministicAcrossThreads) {
  const std::vector<std::string> some(corpus_->begin(), corpus_->begin() + 6);
  const auto a = batch_optimize(some, *model_, *vocab_, config(0.4), false,
                                11, 1);
  const auto b = batch_optimize(some, *model_, *vocab_, config(0.4), false,
                                11, 3);
  EXPECT_EQ(result_rows(a), result_rows(b));
  EXPECT_TRUE(
      batch_optimize({}, *model_, *vocab_, config(0.4), true, 1, 1).empty());
}

OptimResult synthetic(double in, std::vector<std::pair<double, double>> steps,
                      double best_sim) {
  OptimResult r;
  r.input = "CC";
  r.input_score = in;
  double cur = in;
  int t = 0;
  for (const auto &[after, cand]: steps) {
    IterationTrace tr;
    tr.iteration = ++t;
    tr.score_before = cur;
    tr.score_after = std::max(cur, after);
    tr.has_candidate = true;
    tr.best_candidate = cand;
    tr.step_sim = 0.8;
    tr.sim_after = best_sim;
    if (after > cur)
      r.accepted_scores.push_back(after);
    cur = tr.score_after;
    r.iterations.push_back(tr);
  }
  r.iterations_used = t;
  r.noop = r.accepted_scores.empty();
  r.outputs.push_back({ r.noop ? "CC" : "CCO", cur, r.noop ? 1.0 : best_sim });
  return r;
}

TEST(Report, AggregateMatchesHandComputation) {
  const std::vector<OptimResult> rs = {
    synthetic(1.0, { { 3.0, 3.0 }, { 3.0, 2.0 } }, 0.5),
    synthetic(0.0, { { -1.0, -1.0 } }, 0.7),
  };
  const Aggregate a = aggregate(rs);
  EXPECT_EQ(a.inputs, 2);
  EXPECT_EQ(a.improved, 1);
  EXPECT_DOUBLE_EQ(a.improvement.mean, 1.0);  // gains 2 and 0
  EXPECT_DOUBLE_EQ(a.improvement.std, 1.0);
  EXPECT_DOUBLE_EQ(a.sim.mean, 0.75);  // 0.5 and 1.0

  const auto table = iteration_table(rs, 2);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_DOUBLE_EQ(table[0].in_pct, 100.0);
  EXPECT_DOUBLE_EQ(table[0].p_pct, 50.0);
  EXPECT_DOUBLE_EQ(table[0].n_pct, 50.0);
  EXPECT_DOUBLE_EQ(table[0].p_t.mean, 2.0);
  EXPECT_DOUBLE_EQ(table[0].sim_t.mean, 0.8);
  EXPECT_DOUBLE_EQ(table[1].in_pct, 50.0);
  EXPECT_DOUBLE_EQ(table[1].n_pct, 50.0);
  EXPECT_DOUBLE_EQ(table[1].p.mean, 1.0);

  const MeanStd ms = mean_std({ 2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0 });
  EXPECT_DOUBLE_EQ(ms.mean, 5.0);
  EXPECT_DOUBLE_EQ(ms.std, 2.0);
  EXPECT_DOUBLE_EQ(mean_std({}).mean, 0.0);
}

TEST(Report, ResultsTsvRoundTrips) {
  const std::vector<OptimResult> rs = {
    synthetic(1.0, { { 3.0, 3.0 } }, 0.5),
    synthetic(0.0, { { -1.0, -1.0 } }, 0.7),
  };
  std::stringstream ss;
  write_results_tsv(ss, rs, { "seed=7" });
  EXPECT_EQ(ss.str().rfind("# seed=7\n", 0), 0u);
  const auto back = read_results_tsv(ss);
  const auto rows = result_rows(rs);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(back[0].output_smiles, "CCO");
  EXPECT_EQ(back[0].status, "ok");
  EXPECT_EQ(back[1].status, "no-op");
  EXPECT_NEAR(back[0].score_after, 3.0, 1e-6);
}

TEST(Report, EmptyInputsProduceHeaderOnly) {
  std::stringstream ss;
  write_results_tsv(ss, {});
  EXPECT_TRUE(read_results_tsv(ss).empty());
  std::stringstream sum;
  write_summary(sum, {}, 2);
  EXPECT_NE(sum.str().find("inputs=0"), std::string::npos);
}

}  // namespace
}  // namespace modof::pipe
