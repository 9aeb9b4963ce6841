//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>

#include "modof/chem/rings.h"
#include "modof/props/crippen.h"
#include "modof/props/fingerprint.h"
#include "modof/props/plogp.h"
#include "modof/props/sascore.h"
#include "test_util.h"

namespace modof::props {
namespace {

using chem::parse_smiles;

TEST(Fingerprint, SelfSimilarityIsOne) {
  for (const auto &s: testing::fixture_corpus()) {
    const auto fp = morgan_fp(parse_smiles(s));
    EXPECT_EQ(tanimoto(fp, fp), 1.0) << s;
  }
}

TEST(Fingerprint, InvariantUnderAtomPermutation) {
  Rng rng(3);
  const auto corpus = testing::fixture_corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 10) {
    const chem::Molecule m = parse_smiles(corpus[i]);
    const auto ref = morgan_fp(m);
    for (int k = 0; k < 20; ++k) {
      const auto perm = testing::random_permutation(m.num_atoms(), rng);
      EXPECT_EQ(tanimoto(morgan_fp(m.permuted(perm)), ref), 1.0)
          << corpus[i];
    }
  }
}

TEST(Fingerprint, DistinguishesDifferentMolecules) {
  const auto a = morgan_fp(parse_smiles("CCO"));
  const auto b = morgan_fp(parse_smiles("c1ccccc1"));
  EXPECT_LT(tanimoto(a, b), 0.2);
  EXPECT_GT(tanimoto(morgan_fp(parse_smiles("Cc1ccccc1")),
                     morgan_fp(parse_smiles("CCc1ccccc1"))),
            0.3);
}

TEST(Fingerprint, WidthMismatchThrows) {
  const auto m = parse_smiles("CCO");
  EXPECT_THROW(tanimoto(morgan_fp(m, 2, 1024), morgan_fp(m, 2, 2048)),
               FingerprintError);
}

TEST(Crippen, ReferenceValues) {
  // Atom-contribution logP of small reference molecules.
  EXPECT_NEAR(crippen_logp(parse_smiles("c1ccccc1")), 1.6866, 0.01);
  EXPECT_NEAR(crippen_logp(parse_smiles("CCO")), -0.0014, 0.01);
  EXPECT_NEAR(crippen_logp(parse_smiles("Oc1ccccc1")), 1.3922, 0.01);
}

TEST(CycleScore, PenalizesOnlyLargeRings) {
  EXPECT_EQ(cycle_score(parse_smiles("CCCCCCCCCC")), 0.0);
  EXPECT_EQ(cycle_score(parse_smiles("c1ccccc1")), 0.0);
  EXPECT_EQ(cycle_score(parse_smiles("C1CCCCCCC1")), -2.0);
  for (const auto &s: testing::fixture_corpus()) {
    const auto m = parse_smiles(s);
    if (chem::cycle_rank(m) == 0)
      EXPECT_EQ(cycle_score(m), 0.0) << s;
  }
}

TEST(SaScore, BoundedAndOrdered) {
  for (const auto &s: testing::fixture_corpus()) {
    const double v = sa_score(parse_smiles(s));
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, 10.0);
  }
  EXPECT_LT(sa_score(parse_smiles("CCO")),
            sa_score(parse_smiles("C1CC2(C1)CC1(C2)CC2(C1)CC2")));
}

TEST(Plogp, CalibrationCentersComponents) {
  const auto mols = testing::parse_all(testing::fixture_corpus());
  const PlogpConfig cfg = calibrate(mols);
  double logp = 0, sa = 0, cyc = 0;
  for (const auto &m: mols) {
    const PlogpTerms t = plogp_terms(m, cfg);
    logp += (t.logp - cfg.logp_mean) / cfg.logp_std;
    sa += (t.neg_sa - cfg.sa_mean) / cfg.sa_std;
    cyc += (t.cycle - cfg.cycle_mean) / cfg.cycle_std;
  }
  const double n = static_cast<double>(mols.size());
  EXPECT_NEAR(logp / n, 0.0, 1e-9);
  EXPECT_NEAR(sa / n, 0.0, 1e-9);
  EXPECT_NEAR(cyc / n, 0.0, 1e-9);
}

TEST(Plogp, SingleMoleculeFallsBackToUnitStd) {
  const auto mols = testing::parse_all({ "CCO" });
  std::vector<std::string> fallbacks;
  const PlogpConfig cfg = calibrate(mols, {}, {}, &fallbacks);
  EXPECT_EQ(cfg.logp_std, 1.0);
  EXPECT_EQ(cfg.sa_std, 1.0);
  EXPECT_EQ(cfg.cycle_std, 1.0);
  EXPECT_EQ(fallbacks.size(), 3u);
  EXPECT_TRUE(std::isfinite(plogp(mols[0], cfg)));
}

TEST(Plogp, ConfigRoundTripsAndRejectsUnknownKeys) {
  PlogpConfig c;
  c.logp_mean = 1.25;
  c.sa_std = 0.1;
  const PlogpConfig d = PlogpConfig::parse(c.to_string());
  EXPECT_EQ(d.logp_mean, 1.25);
  EXPECT_EQ(d.sa_std, 0.1);
  EXPECT_THROW(PlogpConfig::parse("bogus = 1\n"), std::invalid_argument);
}

}  // namespace
}  // namespace modof::props
