//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "modof/chem/canon.h"
#include "modof/chem/isomorphism.h"
#include "modof/chem/junction_tree.h"
#include "modof/chem/rings.h"
#include "modof/chem/smiles.h"
#include "modof/chem/surgery.h"
#include "modof/chem/vocabulary.h"
#include "test_util.h"

namespace modof::chem {
namespace {

TEST(Smiles, ParsesSimpleChains) {
  const Molecule m = parse_smiles("CCO");
  EXPECT_EQ(m.num_atoms(), 3);
  EXPECT_EQ(m.num_bonds(), 2);
  EXPECT_EQ(m.total_hydrogens(), 6);
}

TEST(Smiles, AromaticRingHydrogens) {
  const Molecule m = parse_smiles("c1ccccc1");
  EXPECT_EQ(m.num_atoms(), 6);
  EXPECT_EQ(m.total_hydrogens(), 6);
  EXPECT_EQ(cycle_rank(m), 1);
}

TEST(Smiles, PyrroleNeedsExplicitHydrogen) {
  EXPECT_NO_THROW(parse_smiles("c1cc[nH]c1"));
  EXPECT_THROW(parse_smiles("c1cccc1"), ChemError);
}

TEST(Smiles, RejectsGarbage) {
  EXPECT_THROW(parse_smiles("C1CC"), ChemError);
  EXPECT_THROW(parse_smiles("C(("), ChemError);
  EXPECT_THROW(parse_smiles("CXC"), ChemError);
}

TEST(Smiles, PentavalentCarbonFailsValenceCheck) {
  const Molecule m = parse_smiles("C(C)(C)(C)(C)C");
  EXPECT_FALSE(valence_check(m).empty());
  EXPECT_THROW(write_smiles(m), ChemError);
}

TEST(Smiles, ImplicitBondBetweenAromaticRingsIsSingle) {
  const Molecule m = parse_smiles("c1ccccc1c1ccccc1");
  int aromatic = 0, single = 0;
  for (const auto &b: m.bonds())
    (b.order == BondOrder::kAromatic ? aromatic : single) += 1;
  EXPECT_EQ(aromatic, 12);
  EXPECT_EQ(single, 1);
}

TEST(Smiles, CanonicalFormIsInvariantUnderRenumbering) {
  Rng rng(11);
  for (const auto &s: testing::fixture_corpus()) {
    const Molecule m = parse_smiles(s);
    const std::string canon = write_smiles(m);
    const auto perm = testing::random_permutation(m.num_atoms(), rng);
    EXPECT_EQ(write_smiles(m.permuted(perm)), canon) << s;
    EXPECT_EQ(write_smiles(parse_smiles(canon)), canon) << s;
  }
}

TEST(Smiles, AromaticFlagsAreTakenFromInput) {
  // No aromaticity perception: Kekule input stays Kekule.
  EXPECT_EQ(canonical_smiles("C1=CC=CC=C1"), "C=1C=CC=CC1");
  EXPECT_EQ(canonical_smiles("c1ccccc1"), "c1ccccc1");
  EXPECT_EQ(canonical_smiles("OC(=O)c1ccccc1"), "O=C(O)c1ccccc1");
}

TEST(Smiles, ChargedAtoms) {
  const Molecule m = parse_smiles("C[N+](=O)[O-]");
  EXPECT_TRUE(valence_check(m).empty());
  EXPECT_EQ(m.atom(1).charge, 1);
  EXPECT_EQ(m.atom(3).charge, -1);
}

TEST(Isomorphism, DetectsEqualAndDifferentGraphs) {
  EXPECT_TRUE(are_isomorphic(parse_smiles("OCC"), parse_smiles("CCO")));
  EXPECT_FALSE(are_isomorphic(parse_smiles("OCC"), parse_smiles("COC")));
  EXPECT_FALSE(are_isomorphic(parse_smiles("C=CC"), parse_smiles("CCC")));
}

TEST(JunctionTree, NaphthaleneHasTwoRingNodes) {
  const Molecule m = parse_smiles("c1ccc2ccccc2c1");
  const JunctionTree t = decompose(m);
  ASSERT_EQ(t.num_nodes(), 2);
  EXPECT_EQ(t.nodes[0].kind, NodeKind::kRing);
  EXPECT_EQ(t.nodes[1].kind, NodeKind::kRing);
  EXPECT_EQ(t.edges.size(), 1u);
  EXPECT_EQ(t.shared_atoms(0, 1).size(), 2u);
}

TEST(JunctionTree, BridgedRingsMerge) {
  // Norbornane: rings share three atoms.
  const JunctionTree t = decompose(parse_smiles("C1CC2CCC1C2"));
  EXPECT_EQ(t.num_nodes(), 1);
}

TEST(JunctionTree, IsATreeCoveringEveryAtom) {
  for (const auto &s: testing::fixture_corpus()) {
    const Molecule m = parse_smiles(s);
    const JunctionTree t = decompose(m);
    EXPECT_EQ(t.edges.size() + 1, static_cast<std::size_t>(t.num_nodes()))
        << s;
    std::vector<bool> covered(m.num_atoms(), false);
    for (const auto &n: t.nodes)
      for (int a: n.atoms)
        covered[a] = true;
    for (bool c: covered)
      EXPECT_TRUE(c) << s;
  }
}

TEST(Vocabulary, SortedAndHashed) {
  const auto mols = testing::parse_all({ "CCO", "c1ccccc1C" });
  const NodeVocabulary v = build_vocabulary(mols);
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v.at(0).descriptor, "CC");
  EXPECT_EQ(v.at(1).descriptor, "CO");
  EXPECT_EQ(v.at(2).descriptor, "c1ccccc1");
  EXPECT_EQ(v.at(2).kind, NodeKind::kRing);
  EXPECT_THROW(v.lookup("CN"), VocabularyMiss);
  const NodeVocabulary w = NodeVocabulary::from_ordered({ "CO", "CC",
                                                          "c1ccccc1" });
  EXPECT_NE(v.hash(), w.hash());
}

TEST(Surgery, RemoveThenAttachRestoresMolecule) {
  const auto mols = testing::parse_all({ "Cc1ccccc1O", "c1ccccc1O" });
  const NodeVocabulary vocab = build_vocabulary(mols);
  const Molecule &m = mols[0];
  const JunctionTree t = junction_tree(m, vocab);
  int ring = -1, methyl = -1;
  for (int i = 0; i < t.num_nodes(); ++i) {
    if (t.nodes[i].kind == NodeKind::kRing)
      ring = i;
    else if (vocab.at(t.nodes[i].type_id).descriptor == "CC")
      methyl = i;
  }
  ASSERT_GE(ring, 0);
  ASSERT_GE(methyl, 0);
  int new_ring = -1;
  IntermediateMol im = remove_subtrees(m, t, ring, { methyl }, &new_ring);
  EXPECT_EQ(write_smiles(im.mol), write_smiles(mols[1]));
  const int cc = vocab.lookup("CC");
  const auto cands = enumerate_attachment_candidates(im, vocab, new_ring, cc);
  ASSERT_FALSE(cands.empty());
  bool restored = false;
  for (std::size_t i = 0; i < cands.parent.size(); ++i)
    for (const auto &c: cands.children[i]) {
      auto next = try_attach(im, vocab, new_ring, cc, cands.parent[i], c);
      ASSERT_TRUE(next.has_value());
      restored = restored || write_smiles(next->mol) == write_smiles(m);
    }
  EXPECT_TRUE(restored);
}

TEST(Surgery, CandidatesAreSymmetryReduced) {
  const auto mols = testing::parse_all({ "c1ccccc1", "Cc1ccccc1" });
  const NodeVocabulary vocab = build_vocabulary(mols);
  IntermediateMol im;
  im.mol = mols[0];
  im.tree = junction_tree(im.mol, vocab);
  const auto cands =
      enumerate_attachment_candidates(im, vocab, 0, vocab.lookup("CC"));
  // All benzene atoms are equivalent; both ethane atoms too.
  ASSERT_EQ(cands.parent.size(), 1u);
  EXPECT_EQ(cands.children[0].size(), 1u);
}

TEST(Surgery, AttachRejectsValenceOverflow) {
  const auto mols = testing::parse_all({ "C(C)(C)(C)C", "CC" });
  const NodeVocabulary vocab = build_vocabulary(mols);
  IntermediateMol im;
  im.mol = mols[0];
  im.tree = junction_tree(im.mol, vocab);
  for (int n = 0; n < im.tree.num_nodes(); ++n) {
    const auto cands =
        enumerate_attachment_candidates(im, vocab, n, vocab.lookup("CC"));
    for (const auto &p: cands.parent)
      EXPECT_NE(p.atoms[0], 0) << "quaternary carbon offered";
  }
}

}  // namespace
}  // namespace modof::chem
