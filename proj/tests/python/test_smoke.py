#
# Project modof - Copyright 2026 The modof Authors.
# SPDX-License-Identifier: Apache-2.0
#
import pathlib

import pytest

import modof

DATA = pathlib.Path(__file__).resolve().parents[1] / "data" / "fixture_corpus.smi"


@pytest.fixture(scope="module")
def corpus():
    lines = DATA.read_text().splitlines()
    return [l for l in lines if l and not l.startswith("#")]


@pytest.fixture(scope="module")
def vocab(corpus):
    return modof.Vocabulary.build(corpus)


def test_canonical_and_properties():
    assert modof.canonical_smiles("OCC") == modof.canonical_smiles("CCO")
    assert modof.similarity("c1ccccc1O", "Oc1ccccc1") == 1.0
    assert modof.cycle_score("CCCCCC") == 0.0
    assert modof.cycle_score("C1CCCCCCC1") == -2.0
    assert abs(modof.logp("c1ccccc1") - 1.6866) < 0.01
    with pytest.raises(modof.ChemError):
        modof.canonical_smiles("C1CC")


def test_calibration_centers_corpus(corpus):
    cfg = modof.calibrate(corpus)
    scores = [modof.plogp(s, cfg) for s in corpus]
    assert abs(sum(scores) / len(scores)) < 1e-6


def test_vocabulary_and_edit_distance(corpus, vocab, tmp_path):
    assert len(vocab) > 0
    path = str(tmp_path / "v.txt")
    vocab.save(path)
    again = modof.Vocabulary.load(path)
    assert [again[i] for i in range(len(again))] == [vocab[i] for i in range(len(vocab))]
    assert modof.tree_edit_distance(corpus[0], corpus[0], vocab) == 0


def test_train_and_optimize(corpus, vocab, tmp_path):
    pairs = modof.extract_pairs(corpus, vocab, sim=0.6, delta=0.0)
    assert pairs and all(p["sim"] >= 0.6 for p in pairs)
    hp = modof.HyperParams()
    hp.hidden, hp.z_dim, hp.t_a, hp.t_n, hp.epochs = 8, 4, 2, 2, 1
    model = modof.train([(p["source"], p["target"]) for p in pairs], vocab, hp, seed=1)
    path = str(tmp_path / "m.ckpt")
    model.save(path, vocab)
    model = modof.Model.load(path, vocab)
    kw = dict(delta=0.4, k=4, iters=2, m=2, b=3, seed=7)
    first = modof.optimize(corpus[:5], model, vocab, **kw)
    second = modof.optimize(corpus[:5], model, vocab, **kw)
    assert first == second
    for r in first:
        assert all(o["sim"] >= 0.4 for o in r["outputs"])
    other = modof.Vocabulary.build(["CCO"])
    with pytest.raises(modof.ModelMismatch):
        modof.Model.load(path, other)
