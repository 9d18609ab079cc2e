"""Synthetic market generators used as ground truth for the metrics.

One-factor model: r_i(t) = sqrt(gamma) f(t) + sqrt(1-gamma) eps_i(t) with
f, eps i.i.d. standard Gaussian, then normalized per asset, giving expected
pairwise correlation gamma. Block models concatenate independent one-factor
blocks (zero expected correlation across blocks). Everything is
deterministic in the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .errors import InputError
from .ingest import PricePanel
from .returns import ReturnPanel, normalize

# synthetic prices use a 1% daily volatility; normalization removes any
# positive scale, so the round trip through prices is exact up to float noise
PRICE_VOL = 0.01
START_PRICE = 100.0
START_DATE = date(2000, 1, 3)


@dataclass
class FactorSpec:
    n: int
    t: int
    gamma: float = 0.0
    seed: int = 0
    blocks: list[tuple[int, float]] | None = None  # (size, within-block gamma)

    def __post_init__(self) -> None:
        if self.n < 2 or self.t < 2:
            raise InputError("need n >= 2 assets and t >= 2 steps")
        if not 0.0 <= self.gamma <= 1.0:
            raise InputError("gamma must be in [0, 1]")
        if self.blocks is not None:
            if any(size < 1 for size, _ in self.blocks):
                raise InputError("block sizes must be >= 1")
            if any(not 0.0 <= g <= 1.0 for _, g in self.blocks):
                raise InputError("block gammas must be in [0, 1]")
            if sum(size for size, _ in self.blocks) != self.n:
                raise InputError("block sizes must sum to n")


def _labels(n: int) -> list[str]:
    width = max(3, len(str(n - 1)))
    return [f"A{i:0{width}d}" for i in range(n)]


def _factor_rows(size: int, t: int, gamma: float, rng: np.random.Generator) -> np.ndarray:
    f = rng.standard_normal(t)
    eps = rng.standard_normal((size, t))
    return np.sqrt(gamma) * f + np.sqrt(1.0 - gamma) * eps


def generate_one_factor(spec: FactorSpec) -> ReturnPanel:
    """Single shared factor across all assets."""
    if spec.blocks is not None:
        raise InputError("one-factor generation takes no blocks")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    raw = _factor_rows(spec.n, spec.t, spec.gamma, rng)
    return normalize(raw, _labels(spec.n))


def generate_blocks(spec: FactorSpec) -> ReturnPanel:
    """Independent one-factor blocks, concatenated in order."""
    if spec.blocks is None:
        raise InputError("block generation requires blocks")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    raw = np.vstack([_factor_rows(size, spec.t, g, rng) for size, g in spec.blocks])
    return normalize(raw, _labels(spec.n))


def to_price_panel(
    rp: ReturnPanel,
    start_price: float = START_PRICE,
    start_date: date = START_DATE,
    daily_vol: float = PRICE_VOL,
) -> PricePanel:
    """Prices whose log returns normalize back to exactly this panel."""
    if start_price <= 0.0 or daily_vol <= 0.0:
        raise InputError("start price and volatility must be positive")
    log_prices = np.log(start_price) + np.concatenate(
        [np.zeros((rp.n_assets, 1)), daily_vol * np.cumsum(rp.returns, axis=1)], axis=1
    )
    dates = [start_date + timedelta(days=k) for k in range(rp.n_steps + 1)]
    return PricePanel(labels=list(rp.labels), dates=dates, prices=np.exp(log_prices))
