"""Participation metrics: how many components move together, and who moves.

For an orthonormal eigensystem U (column k = eigenvector k):

  participation ratio       P_k = 1 / sum_l U[l,k]^4   in [1, N]
  node participation ratio  N_l = 1 / sum_k U[l,k]^4   in [1, N]
  node independency         1 / N_l

P_k counts the significant components of eigenvector k (1 = fully
localized, N = uniform). N_l is the dual along rows: a node with low N_l
takes little part in the collective modes, so its independency is high.
Both are sign-blind and share the identity sum_k 1/P_k = sum_l 1/N_l.

The relative participation ratio compares the mean P over all eigenvectors
of a matrix with the mean P of its value-preserving shuffled null:

  delta = (<P_sh> - <P>) / <P_sh>

averaged over a seeded shuffle ensemble. Near 0 means the correlation
pattern carries no structure beyond its values (shuffling changes
nothing); large positive values mean strongly patterned collectivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .correlation import CorrelationMatrix, EigenSystem, eigendecompose
from .errors import InputError, NumericalError
from .nullmodel import RNG_ALGORITHM, make_ensemble


@dataclass
class Histogram:
    """Log-binned density histogram; integrates to 1 over its bins."""

    edges: np.ndarray  # length bins+1
    densities: np.ndarray  # length bins
    degenerate: bool = False


@dataclass
class CollectiveReport:
    """Participation metrics of one matrix against its shuffle ensemble."""

    labels: list[str]
    eigenvalues: np.ndarray  # descending
    pr: np.ndarray  # P_k, descending-eigenvalue order
    pr_normalized: np.ndarray  # P_k / N
    npr: np.ndarray  # N_l, aligned with labels
    independency: np.ndarray  # 1 / N_l, aligned with labels
    delta: float
    delta_std: float
    ensemble_count: int
    ensemble_seed: int
    rng_algorithm: str = RNG_ALGORITHM
    # ensemble curves for plots: positional means, see report writers
    pr_shuffled_mean: np.ndarray = field(default=None, repr=False)
    npr_shuffled_sorted_mean: np.ndarray = field(default=None, repr=False)

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "lambda": [float(x) for x in self.eigenvalues],
            "pr": [float(x) for x in self.pr],
            "pr_normalized": [float(x) for x in self.pr_normalized],
            "npr": {lab: float(x) for lab, x in zip(self.labels, self.npr)},
            "independency": {
                lab: float(x) for lab, x in zip(self.labels, self.independency)
            },
            "delta": float(self.delta),
            "delta_std": float(self.delta_std),
            "ensemble_meta": {
                "count": self.ensemble_count,
                "seed": self.ensemble_seed,
                "rng": self.rng_algorithm,
            },
        }


def participation_ratios(es: EigenSystem) -> np.ndarray:
    """P_k per eigenvector, same order as the eigenvalues."""
    return 1.0 / np.sum(es.eigenvectors**4, axis=0)


def node_participation_ratios(es: EigenSystem) -> np.ndarray:
    """N_l per component index l."""
    return 1.0 / np.sum(es.eigenvectors**4, axis=1)


def _ensemble_metrics(
    C: CorrelationMatrix, count: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-member (delta_m, PR curve, ascending-sorted NPR curve)."""
    mean_pr = float(np.mean(participation_ratios(eigendecompose(C))))
    ensemble = make_ensemble(C, count, seed)
    deltas = np.empty(count)
    pr_curves = np.empty((count, C.n))
    npr_curves = np.empty((count, C.n))
    for m, member in enumerate(ensemble.matrices):
        try:
            es = eigendecompose(member)
        except NumericalError as exc:
            raise NumericalError(f"ensemble member {m}: {exc}") from exc
        pr = participation_ratios(es)
        deltas[m] = (pr.mean() - mean_pr) / pr.mean()
        pr_curves[m] = pr
        npr_curves[m] = np.sort(node_participation_ratios(es))
    return deltas, pr_curves, npr_curves


def relative_participation_ratio(
    C: CorrelationMatrix, count: int, seed: int
) -> tuple[float, float]:
    """Ensemble mean and (population) std of delta = (<P_sh> - <P>) / <P_sh>."""
    deltas, _, _ = _ensemble_metrics(C, count, seed)
    return float(deltas.mean()), float(deltas.std())


def collective_report(C: CorrelationMatrix, count: int, seed: int) -> CollectiveReport:
    """Full participation report for one matrix against its shuffled null.

    Shuffled PR means are positional in descending-eigenvalue order;
    shuffled NPR means are positional after sorting each member's NPRs
    ascending (the sorted-curve convention used for display).
    """
    es = eigendecompose(C)
    pr = participation_ratios(es)
    npr = node_participation_ratios(es)
    deltas, pr_curves, npr_curves = _ensemble_metrics(C, count, seed)
    return CollectiveReport(
        labels=list(C.labels),
        eigenvalues=es.eigenvalues,
        pr=pr,
        pr_normalized=pr / C.n,
        npr=npr,
        independency=1.0 / npr,
        delta=float(deltas.mean()),
        delta_std=float(deltas.std()),
        ensemble_count=count,
        ensemble_seed=seed,
        pr_shuffled_mean=pr_curves.mean(axis=0),
        npr_shuffled_sorted_mean=npr_curves.mean(axis=0),
    )


def independency_pdf(values: np.ndarray, bins: int = 20) -> Histogram:
    """Probability density of node independency over log-spaced bins.

    Bin edges span [min, max] of the data; densities satisfy
    sum(density * width) == 1. All-identical input yields a single
    flagged bin, log-symmetric around the value.
    """
    values = np.asarray(values, dtype=float)
    if bins < 2:
        raise InputError("need at least 2 bins")
    if values.size == 0 or np.any(values <= 0.0):
        raise InputError("independency values must be positive")
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        edges = np.array([lo / 2.0, 2.0 * lo])
        return Histogram(edges=edges, densities=np.array([1.0 / (1.5 * lo)]), degenerate=True)
    edges = np.geomspace(lo, hi, bins + 1)
    edges[0], edges[-1] = lo, hi  # guard endpoint rounding
    densities, _ = np.histogram(values, bins=edges, density=True)
    return Histogram(edges=edges, densities=densities)
