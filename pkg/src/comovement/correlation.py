"""Equal-time cross-correlation matrix and its eigendecomposition.

C[i, j] = (1/T) sum_t r_i(t) r_j(t) over normalized returns, which makes C
symmetric with unit diagonal and off-diagonal entries in [-1, 1]. The
eigensystem is reported with eigenvalues descending and a deterministic
sign convention (largest-magnitude component of each eigenvector positive).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, NumericalError
from .returns import ReturnPanel

SYMMETRY_TOL = 1e-12
ORTHONORMALITY_TOL = 1e-10
RESIDUAL_TOL_PER_N = 1e-10


@dataclass
class CorrelationMatrix:
    labels: list[str]
    values: np.ndarray  # (N, N) symmetric, diagonal exactly 1

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] != len(self.labels):
            raise InputError("correlation matrix must be square with one label per row")
        if not np.isfinite(v).all():
            raise InputError("correlation matrix has non-finite entries")
        if np.abs(v - v.T).max(initial=0.0) > SYMMETRY_TOL:
            raise InputError("correlation matrix is not symmetric")
        if np.any(np.diag(v) != 1.0):
            raise InputError("correlation matrix diagonal must be exactly 1")

    @property
    def n(self) -> int:
        return len(self.labels)

    def offdiagonal(self) -> np.ndarray:
        """Upper-triangle off-diagonal entries, row-major order."""
        return self.values[np.triu_indices(self.n, k=1)]


@dataclass
class EigenSystem:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # column k is the k-th eigenvector


def correlate(rp: ReturnPanel) -> CorrelationMatrix:
    """Cross-correlation matrix of a normalized return panel."""
    r = rp.returns
    T = r.shape[1]
    raw = (r @ r.T) / T
    upper = np.triu(raw, k=1)  # compute upper triangle, mirror for exact symmetry
    values = upper + upper.T
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(labels=list(rp.labels), values=values)


def eigendecompose(C: CorrelationMatrix) -> EigenSystem:
    """Full symmetric eigendecomposition with verified accuracy.

    Raises NumericalError (carrying the achieved residual) if the solver
    fails or the orthonormality / residual bounds are violated.
    """
    n = C.n
    try:
        w, U = np.linalg.eigh(C.values)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed to converge: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    w = w[order]
    U = U[:, order]
    # sign convention: largest-magnitude component positive
    anchor = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[anchor, np.arange(n)])
    signs[signs == 0] = 1.0
    U = U * signs

    ortho = np.abs(U.T @ U - np.eye(n)).max()
    residual = np.linalg.norm(C.values @ U - U * w, axis=0).max()
    if ortho > ORTHONORMALITY_TOL or residual > RESIDUAL_TOL_PER_N * n:
        raise NumericalError(
            f"eigendecomposition out of tolerance: residual={residual:.3e}, "
            f"orthonormality={ortho:.3e}"
        )
    return EigenSystem(eigenvalues=w, eigenvectors=U)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def correlation_to_csv(C: CorrelationMatrix, path: str | Path) -> None:
    """Write labels as header row/column, entries with 17 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", *C.labels])
        for lab, row in zip(C.labels, C.values):
            writer.writerow([lab, *(_fmt(x) for x in row)])


def correlation_from_csv(path: str | Path) -> CorrelationMatrix:
    """Read a matrix written by correlation_to_csv (or an equivalent fixture)."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8-sig", newline="") as fh:
            rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    except (FileNotFoundError, IsADirectoryError) as exc:
        raise InputError(str(exc)) from None
    if len(rows) < 2:
        raise InputError(f"{path}: empty correlation CSV")
    labels = [cell.strip() for cell in rows[0][1:]]
    n = len(labels)
    if n < 2:
        raise InputError(f"{path}: need at least 2 assets")
    if len(rows) != n + 1:
        raise InputError(f"{path}: expected {n} data rows, got {len(rows) - 1}")
    values = np.empty((n, n))
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise InputError(f"{path}: row {i + 2} has {len(row)} columns, expected {n + 1}")
        if row[0].strip() != labels[i]:
            raise InputError(f"{path}: row label {row[0]!r} does not match header order")
        try:
            values[i] = [float(cell) for cell in row[1:]]
        except ValueError as exc:
            raise InputError(f"{path}: row {i + 2}: {exc}") from None
    if np.abs(np.diag(values) - 1.0).max() > SYMMETRY_TOL:
        raise InputError(f"{path}: diagonal must be 1")
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(labels=labels, values=values)


def correlation_to_json(C: CorrelationMatrix) -> dict:
    return {"labels": list(C.labels), "values": [list(map(float, row)) for row in C.values]}


def correlation_from_json(obj: dict) -> CorrelationMatrix:
    return CorrelationMatrix(
        labels=list(obj["labels"]), values=np.asarray(obj["values"], dtype=float)
    )
