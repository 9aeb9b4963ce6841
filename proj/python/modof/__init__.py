#
# Project modof - Copyright 2026 The modof Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Local molecule optimization by junction-tree edits."""

from ._core import (
    ChemError,
    HyperParams,
    Model,
    ModelMismatch,
    PlogpConfig,
    Vocabulary,
    __version__,
    calibrate,
    canonical_smiles,
    cycle_score,
    extract_pairs,
    logp,
    optimize,
    plogp,
    sa_score,
    similarity,
    train,
    tree_edit_distance,
)

__all__ = [
    "ChemError",
    "HyperParams",
    "Model",
    "ModelMismatch",
    "PlogpConfig",
    "Vocabulary",
    "__version__",
    "calibrate",
    "canonical_smiles",
    "cycle_score",
    "extract_pairs",
    "logp",
    "optimize",
    "plogp",
    "sa_score",
    "similarity",
    "train",
    "tree_edit_distance",
]
