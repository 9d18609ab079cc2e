"""Log returns and per-asset normalization.

Raw return of asset i over one panel step: R_i(t) = ln P_i(t+1) - ln P_i(t).
Normalized return: r_i(t) = (R_i(t) - mean_t R_i) / sigma_i with sigma_i the
population (divide-by-T) standard deviation, so each row of a ReturnPanel has
mean 0 and standard deviation 1 and the correlation matrix built from it has
an exactly unit diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InputError
from .ingest import PricePanel


@dataclass
class ReturnPanel:
    """N x T normalized returns plus the raw-return mean/std they came from."""

    labels: list[str]
    returns: np.ndarray  # shape (N, T), each row mean 0 / population std 1
    mean: np.ndarray  # per-asset raw-return mean
    std: np.ndarray  # per-asset raw-return population std, > 0

    @property
    def n_assets(self) -> int:
        return len(self.labels)

    @property
    def n_steps(self) -> int:
        return self.returns.shape[1]


def log_returns(panel: PricePanel) -> np.ndarray:
    """Raw log returns over consecutive panel dates, shape (N, T)."""
    return np.diff(np.log(panel.prices), axis=1)


def normalize(raw: np.ndarray, labels: Sequence[str]) -> ReturnPanel:
    """Center each row and scale by its population std.

    A zero-variance row (constant prices) cannot be normalized and is an
    error naming the asset.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 2 or raw.shape[0] != len(labels):
        raise InputError("raw return matrix must be N x T with one row per label")
    if raw.shape[1] < 2:
        raise InputError("need at least 2 return steps")
    mu = raw.mean(axis=1)
    sigma = raw.std(axis=1)  # population (1/T)
    dead = np.flatnonzero(sigma == 0.0)
    if dead.size:
        raise InputError(f"zero-variance returns for asset {labels[dead[0]]!r}")
    normalized = (raw - mu[:, None]) / sigma[:, None]
    return ReturnPanel(labels=list(labels), returns=normalized, mean=mu, std=sigma)


def panel_returns(panel: PricePanel) -> ReturnPanel:
    """PricePanel -> normalized ReturnPanel in one step."""
    return normalize(log_returns(panel), panel.labels)
