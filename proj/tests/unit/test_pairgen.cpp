//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>

#include "modof/chem/isomorphism.h"
#include "modof/chem/smiles.h"
#include "modof/pairgen/ged.h"
#include "modof/pairgen/pairs.h"
#include "modof/pairgen/stats.h"
#include "test_util.h"

namespace modof::pairgen {
namespace {

LabeledGraph random_tree(int n, int labels, Rng &rng) {
  LabeledGraph g;
  for (int i = 0; i < n; ++i) {
    g.labels.push_back(static_cast<int>(rng.below(labels)));
    if (i > 0)
      g.edges.emplace_back(static_cast<int>(rng.below(i)), i);
  }
  return g;
}

TEST(Ged, IdenticalTreesCostNothing) {
  Rng rng(1);
  const LabeledGraph g = random_tree(7, 3, rng);
  const EditPath p = tree_edit_distance(g, g);
  EXPECT_EQ(p.cost, 0);
  EXPECT_TRUE(p.removed.empty());
  EXPECT_TRUE(p.added.empty());
}

TEST(Ged, ExtraLeafCostsNodeAndEdge) {
  LabeledGraph x{ { 0, 1 }, { { 0, 1 } } };
  LabeledGraph y{ { 0, 1, 2 }, { { 0, 1 }, { 1, 2 } } };
  const EditPath p = tree_edit_distance(x, y);
  EXPECT_EQ(p.cost, 2);
  EXPECT_EQ(p.added, std::vector<int>{ 2 });
  EXPECT_EQ(disconnection_sites(p, x, y), std::vector<int>{ 1 });
}

TEST(Ged, MatchesBruteForceOnRandomTrees) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const int nx = 1 + static_cast<int>(rng.below(6));
    const int ny = 1 + static_cast<int>(rng.below(12 - nx));
    const LabeledGraph x = random_tree(nx, 3, rng);
    const LabeledGraph y = random_tree(ny, 3, rng);
    const EditPath p = tree_edit_distance(x, y);
    EXPECT_EQ(p.cost, brute_force_ged(x, y)) << "trial " << trial;
    EXPECT_EQ(p.cost, mapping_cost(x, y, p.forward(nx)));
  }
}

TEST(Ged, OptimalPathsAllHaveOptimalCost) {
  LabeledGraph x{ { 0, 1, 1 }, { { 0, 1 }, { 0, 2 } } };
  LabeledGraph y{ { 0, 1 }, { { 0, 1 } } };
  const int best = tree_edit_distance(x, y).cost;
  int seen = 0;
  for_each_optimal_path(x, y, best, [&](const EditPath &p) {
    EXPECT_EQ(mapping_cost(x, y, p.forward(x.size())), best);
    ++seen;
    return false;
  }, 16);
  EXPECT_EQ(seen, 2);  // either label-1 leaf may go
}

TEST(Ged, RejectsOversizedTrees) {
  Rng rng(2);
  const LabeledGraph big = random_tree(41, 2, rng);
  EXPECT_THROW(tree_edit_distance(big, big), GedError);
}

TEST(Ops, SerializationRoundTrips) {
  const auto mols = testing::parse_all({ "CCO", "c1ccccc1" });
  const chem::NodeVocabulary vocab = chem::build_vocabulary(mols);
  const std::vector<AttachOp> ops = {
    { false, 0, vocab.lookup("CO"), 1, 0 },
    { true, 0, -1, 0, 0 },
    { true, 1, -1, 0, 0 },
  };
  const std::string text = serialize_ops(ops, vocab);
  EXPECT_EQ(parse_ops(text, vocab), ops);
  EXPECT_THROW(parse_ops("E:0,XX,0,0", vocab), std::exception);
}

class FixturePairs: public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    corpus_ = new std::vector<std::string>(testing::fixture_corpus());
    const auto mols = testing::parse_all(*corpus_);
    vocab_ = new chem::NodeVocabulary(chem::build_vocabulary(mols));
    props::LogpScorer logp;
    ExtractOptions eo;
    eo.sim_min = 0.6;
    eo.delta_min = -1e9;
    eo.threads = 4;
    pairs_ = new std::vector<TrainingPair>(
        extract_pairs(*corpus_, *vocab_, logp, eo));
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete vocab_;
    delete pairs_;
  }
  static std::vector<std::string> *corpus_;
  static chem::NodeVocabulary *vocab_;
  static std::vector<TrainingPair> *pairs_;
};

std::vector<std::string> *FixturePairs::corpus_ = nullptr;
chem::NodeVocabulary *FixturePairs::vocab_ = nullptr;
std::vector<TrainingPair> *FixturePairs::pairs_ = nullptr;

TEST_F(FixturePairs, ExtractsPairs) {
  EXPECT_GT(pairs_->size(), 50u);
  for (const auto &p: *pairs_) {
    EXPECT_GE(p.sim, 0.6);
    EXPECT_EQ(p.path.cost, tree_edit_distance(p.tx, p.ty).cost);
  }
}

TEST_F(FixturePairs, ReplayReproducesTarget) {
  for (const auto &p: *pairs_) {
    const chem::IntermediateMol im = replay(p, *vocab_);
    EXPECT_TRUE(chem::are_isomorphic(im.mol, p.my))
        << p.mx_smiles << " -> " << p.my_smiles;
  }
}

TEST_F(FixturePairs, TsvRoundTrip) {
  testing::TempDir dir("pairs");
  const std::string path = dir.file("pairs.tsv");
  write_pairs_tsv(path, *pairs_, *vocab_, { "fixture" });
  const auto back = read_pairs_tsv(path, *vocab_);
  ASSERT_EQ(back.size(), pairs_->size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].mx_smiles, (*pairs_)[i].mx_smiles);
    EXPECT_EQ(back[i].ops, (*pairs_)[i].ops);
    EXPECT_EQ(back[i].n_d, (*pairs_)[i].n_d);
    EXPECT_EQ(back[i].removal, (*pairs_)[i].removal);
  }
}

TEST(Extract, EmptyCorpusGivesNothing) {
  chem::NodeVocabulary vocab =
      chem::NodeVocabulary::from_descriptors({ "CC" });
  props::LogpScorer logp;
  ExtractReport rep;
  EXPECT_TRUE(extract_pairs({}, vocab, logp, {}, &rep).empty());
  EXPECT_EQ(rep.candidates, 0);
}

TEST(Extract, PropertyGateRejectsDeclines) {
  const std::vector<std::string> corpus = { "CCc1ccccc1", "CCc1ccccc1O" };
  const chem::NodeVocabulary vocab =
      chem::build_vocabulary(testing::parse_all(corpus));
  props::LogpScorer logp;
  ExtractOptions eo;
  eo.sim_min = 0.0;
  eo.delta_min = 0.0;
  const auto pairs = extract_pairs(corpus, vocab, logp, eo);
  for (const auto &p: pairs)
    EXPECT_GT(p.prop_delta, 0.0);
}

TEST(Plant, SiteIsRecovered) {
  const std::vector<std::string> seeds = {
    "CC(=O)Oc1ccccc1C(=O)O", "CN1CCC(CC1)c1ccccc1", "O=C(NCc1ccccc1)c1ccccn1",
    "CCN(CC)CCNC(=O)c1ccc(N)cc1", "Cc1ccc(cc1)S(=O)(=O)N",
  };
  const std::vector<std::string> frags = { "CC", "CO", "CN", "CCl",
                                           "c1ccccc1", "C1CC1" };
  Rng rng(9);
  int planted = 0;
  for (int i = 0; i < 40; ++i) {
    const auto e = plant_edit(chem::parse_smiles(seeds[i % seeds.size()]),
                              frags, rng);
    if (!e)
      continue;
    ++planted;
    const chem::Molecule mx = chem::parse_smiles(e->mx_smiles);
    const chem::Molecule my = chem::parse_smiles(e->my_smiles);
    const LabeledGraph x = to_labeled(chem::decompose(mx));
    std::vector<chem::Molecule> both{ mx, my };
    const chem::NodeVocabulary vocab = chem::build_vocabulary(both);
    const LabeledGraph lx = to_labeled(chem::junction_tree(mx, vocab));
    const LabeledGraph ly = to_labeled(chem::junction_tree(my, vocab));
    const EditPath p = tree_edit_distance(lx, ly);
    EXPECT_EQ(disconnection_sites(p, lx, ly), std::vector<int>{ e->n_d })
        << e->mx_smiles << " -> " << e->my_smiles;
    EXPECT_EQ(x.size(), lx.size());
  }
  EXPECT_GT(planted, 30);
}

TEST(Stats, CountsFragmentsOfKnownPairs) {
  const std::vector<std::pair<std::string, std::string>> raw = {
    { "Cc1ccccc1", "Clc1ccccc1" },
    { "Cc1ccccc1", "Oc1ccccc1" },
    { "c1ccccc1", "Oc1ccccc1" },
  };
  std::vector<chem::Molecule> mols;
  for (const auto &[a, b]: raw) {
    mols.push_back(chem::parse_smiles(a));
    mols.push_back(chem::parse_smiles(b));
  }
  const chem::NodeVocabulary vocab = chem::build_vocabulary(mols);
  std::vector<TrainingPair> pairs;
  for (const auto &[a, b]: raw) {
    TrainingPair p = make_pair_skeleton(a, b, vocab);
    ASSERT_EQ(derive_first_edit(p, vocab), DeriveStatus::kOk) << a;
    pairs.push_back(std::move(p));
  }
  const FragmentStats st = fragment_stats(pairs);
  const auto frag = [](const char *s) {
    return chem::write_fragment_smiles(chem::parse_fragment_smiles(s));
  };
  EXPECT_EQ(st.pairs, 3);
  EXPECT_EQ(st.pairs_with_removal, 2);
  EXPECT_EQ(st.pairs_with_attachment, 3);
  EXPECT_EQ(st.removal.at(frag("CC")), 2);
  EXPECT_EQ(st.attachment.at(frag("CO")), 2);
  EXPECT_EQ(st.attachment.at(frag("CCl")), 1);
  EXPECT_DOUBLE_EQ(st.mean_removal_atoms, 1.0);
  EXPECT_DOUBLE_EQ(st.mean_attachment_atoms, 1.0);
  const auto top = top_fragments(st.attachment, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].first, frag("CO"));
  EXPECT_TRUE(fragment_stats({}).removal.empty());
}

}  // namespace
}  // namespace modof::pairgen
