"""Shuffled-matrix null model.

Shuffling permutes the N(N-1)/2 upper-triangle off-diagonal entries
uniformly at random and mirrors them, leaving the diagonal at 1. The
result keeps every correlation value (exact multiset identity, hence
exact trace and Frobenius conservation) while destroying their pattern.
Shuffled matrices may be indefinite.

Ensembles draw each member from an independent PCG64 substream spawned
from (seed, member index), so results are deterministic regardless of
evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlation import CorrelationMatrix
from .errors import InputError

RNG_ALGORITHM = "PCG64"


@dataclass
class ShuffleEnsemble:
    base: CorrelationMatrix
    seed: int
    count: int
    matrices: list[CorrelationMatrix]


def shuffle_once(C: CorrelationMatrix, rng: np.random.Generator) -> CorrelationMatrix:
    """One value-preserving shuffle of the off-diagonal entries."""
    n = C.n
    iu = np.triu_indices(n, k=1)
    shuffled = rng.permutation(C.values[iu])  # Fisher-Yates under the hood
    values = np.zeros_like(C.values)
    values[iu] = shuffled
    values = values + values.T
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(labels=list(C.labels), values=values)


def member_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream for ensemble member `index`."""
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return np.random.Generator(np.random.PCG64(child))


def make_ensemble(C: CorrelationMatrix, count: int, seed: int) -> ShuffleEnsemble:
    """`count` independent shuffles; identical (C, count, seed) give identical output."""
    if count < 1:
        raise InputError("ensemble count must be >= 1")
    children = np.random.SeedSequence(seed).spawn(count)
    matrices = [
        shuffle_once(C, np.random.Generator(np.random.PCG64(child))) for child in children
    ]
    return ShuffleEnsemble(base=C, seed=seed, count=count, matrices=matrices)
