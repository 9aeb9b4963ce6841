//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>

#include "modof/chem/smiles.h"
#include "modof/net/train.h"
#include "modof/props/plogp.h"
#include "test_util.h"

namespace modof::net {
namespace {

HyperParams tiny_hp() {
  HyperParams hp;
  hp.hidden = 16;
  hp.z_dim = 4;
  hp.t_a = 2;
  hp.t_n = 2;
  hp.batch = 4;
  hp.epochs = 2;
  hp.lr = 1e-3;
  return hp;
}

class NetFixture: public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    const auto corpus = testing::fixture_corpus();
    vocab_ = new chem::NodeVocabulary(
        chem::build_vocabulary(testing::parse_all(corpus)));
    props::LogpScorer logp;
    pairgen::ExtractOptions eo;
    eo.sim_min = 0.6;
    eo.delta_min = -1e9;
    eo.threads = 4;
    auto all = pairgen::extract_pairs(corpus, *vocab_, logp, eo);
    all.resize(std::min<std::size_t>(all.size(), 12));
    pairs_ = new std::vector<pairgen::TrainingPair>(std::move(all));
  }
  static void TearDownTestSuite() {
    delete vocab_;
    delete pairs_;
  }
  static Model fresh(const HyperParams &hp, std::uint64_t seed = 1) {
    Model m(hp, vocab_->size());
    Rng rng(seed);
    m.init(rng);
    return m;
  }
  static chem::NodeVocabulary *vocab_;
  static std::vector<pairgen::TrainingPair> *pairs_;
};

chem::NodeVocabulary *NetFixture::vocab_ = nullptr;
std::vector<pairgen::TrainingPair> *NetFixture::pairs_ = nullptr;

bool same_params(const Model &a, const Model &b) {
  if (a.params().size() != b.params().size())
    return false;
  for (int i = 0; i < a.params().size(); ++i)
    if (a.params().at(i).value != b.params().at(i).value)
      return false;
  return true;
}

TEST(Beta, ScheduleFollowsStepRule) {
  const HyperParams hp;
  for (long long n: { 0LL, 10LL, 100000LL })
    EXPECT_EQ(beta_at(hp, 1, n), 0.1);
  const long long probes[] = { 0, 1, 499, 500, 501, 999, 1000, 2500,
                               3999, 4000, 4500, 100000 };
  for (long long n: probes) {
    const double expected =
        std::min(0.1 + 0.05 * static_cast<double>(n / 500), 0.5);
    EXPECT_EQ(beta_at(hp, 2, n), expected) << n;
    EXPECT_EQ(beta_at(hp, 7, n), expected) << n;
  }
  EXPECT_DOUBLE_EQ(beta_at(hp, 2, 499), 0.1);
  EXPECT_DOUBLE_EQ(beta_at(hp, 2, 500), 0.15);
  EXPECT_DOUBLE_EQ(beta_at(hp, 2, 1 << 20), 0.5);
}

TEST(HyperParamsTest, ValidateRejectsNonsense) {
  HyperParams hp;
  EXPECT_NO_THROW(hp.validate());
  hp.hidden = 0;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
  hp = {};
  hp.beta_every = 0;
  EXPECT_THROW(hp.validate(), std::invalid_argument);
}

TEST_F(NetFixture, HasPairs) { ASSERT_GE(pairs_->size(), 8u); }

TEST_F(NetFixture, LossGradientMatchesFiniteDifferences) {
  HyperParams hp = tiny_hp();
  hp.hidden = 6;
  Model m = fresh(hp);
  Rng pick(4);
  for (int i = 0; i < 3; ++i) {
    const auto &p = (*pairs_)[i];
    const auto f = [&](tensor::Tape &t) {
      Rng noise(100 + i);
      return pair_loss(t, m, p, *vocab_, 0.3, &noise).total;
    };
    const auto r = tensor::grad_check(m.params(), f, 1e-5, 300, &pick);
    EXPECT_LT(r.max_rel_error, 1e-4) << r.worst_param;
  }
}

TEST_F(NetFixture, ZeroModelDecodesToInput) {
  Model m(tiny_hp(), vocab_->size());
  for (int i = 0; i < 5; ++i) {
    const auto &p = (*pairs_)[i];
    Rng rng(i);
    const DecodeResult d = sample_decode(m, *vocab_, p.mx, p.tx, rng);
    EXPECT_FALSE(d.failed) << d.error;
    EXPECT_EQ(d.smiles, p.mx_smiles);
  }
}

TEST_F(NetFixture, DecodesAreValidMolecules) {
  Model m = fresh(tiny_hp(), 3);
  Rng rng(5);
  for (int i = 0; i < 60; ++i) {
    const auto &p = (*pairs_)[i % pairs_->size()];
    Rng r = rng.split(i);
    const DecodeResult d = sample_decode(m, *vocab_, p.mx, p.tx, r);
    EXPECT_LE(d.mol.num_atoms(), 38);
    EXPECT_TRUE(chem::valence_check(d.mol).empty()) << d.smiles;
    EXPECT_NO_THROW(chem::parse_smiles(d.smiles));
  }
}

TEST_F(NetFixture, TrainingIsThreadCountInvariant) {
  Model a = fresh(tiny_hp()), b = fresh(tiny_hp());
  TrainOptions o;
  o.seed = 9;
  o.threads = 1;
  train(a, *pairs_, *vocab_, o);
  o.threads = 4;
  train(b, *pairs_, *vocab_, o);
  EXPECT_TRUE(same_params(a, b));
  EXPECT_FALSE(same_params(a, fresh(tiny_hp())));
}

TEST_F(NetFixture, ResumeIsBitExact) {
  HyperParams hp = tiny_hp();
  hp.epochs = 3;
  Model full = fresh(hp);
  TrainOptions o;
  o.seed = 2;
  const TrainState end = train(full, *pairs_, *vocab_, o);
  EXPECT_EQ(end.epoch, 3);

  testing::TempDir dir("resume");
  const std::string path = dir.file("m.ckpt");
  hp.epochs = 1;
  Model part = fresh(hp);
  const TrainState mid = train(part, *pairs_, *vocab_, o);
  save_model(path, part, *vocab_, mid);
  TrainState loaded;
  Model resumed = load_model(path, *vocab_, &loaded);
  EXPECT_EQ(loaded.epoch, 1);
  EXPECT_EQ(loaded.batches, mid.batches);
  resumed.mutable_hp().epochs = 3;
  const TrainState end2 = train(resumed, *pairs_, *vocab_, o, loaded);
  EXPECT_EQ(end2.batches, end.batches);
  EXPECT_EQ(end2.post_epoch1_batches, end.post_epoch1_batches);
  EXPECT_TRUE(same_params(full, resumed));
}

TEST_F(NetFixture, LoadRejectsOtherVocabulary) {
  testing::TempDir dir("mismatch");
  const std::string path = dir.file("m.ckpt");
  save_model(path, fresh(tiny_hp()), *vocab_, {});
  const auto other = chem::NodeVocabulary::from_descriptors({ "CC", "CO" });
  EXPECT_THROW(load_model(path, other), ModelMismatch);
  EXPECT_NO_THROW(load_model(path, *vocab_));
}

TEST_F(NetFixture, TrainingReducesLoss) {
  HyperParams hp = tiny_hp();
  hp.epochs = 15;
  hp.lr = 5e-3;
  Model m = fresh(hp);
  std::vector<double> epoch_loss(hp.epochs + 1, 0.0);
  TrainOptions o;
  o.seed = 3;
  o.on_batch = [&](const BatchRecord &r) { epoch_loss[r.epoch] += r.loss; };
  train(m, *pairs_, *vocab_, o);
  EXPECT_LT(epoch_loss[hp.epochs], epoch_loss[1]);
  for (double l: epoch_loss)
    EXPECT_TRUE(std::isfinite(l));
}

}  // namespace
}  // namespace modof::net
