"""Load price series from CSV and align them onto a common calendar.

CSV is UTF-8 with a header row. Wide layout: ``date,LABEL1,LABEL2,...``,
one row per date. Long layout: ``date,label,price`` rows in any order.
Dates are ISO-8601 (YYYY-MM-DD) and treated as opaque ordered labels;
there is no timezone or business-day logic.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import numpy as np

from .errors import InputError


@dataclass
class PriceSeries:
    """One asset's observations: strictly increasing dates, positive prices."""

    label: str
    dates: list[date]
    prices: np.ndarray


@dataclass
class PricePanel:
    """N assets observed on a shared calendar of T+1 dates (no gaps)."""

    labels: list[str]
    dates: list[date]
    prices: np.ndarray  # shape (N, T+1), all positive

    @property
    def n_assets(self) -> int:
        return len(self.labels)

    @property
    def n_dates(self) -> int:
        return len(self.dates)


def _parse_date(text: str, line_no: int) -> date:
    try:
        return date.fromisoformat(text.strip())
    except ValueError:
        raise InputError(f"line {line_no}: unparsable date {text!r}") from None


def _parse_price(text: str, label: str, day: date, line_no: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(
            f"line {line_no}: non-numeric price {text!r} for asset {label!r} on {day}"
        ) from None
    if not np.isfinite(value) or value <= 0.0:
        raise InputError(
            f"line {line_no}: non-positive price {value!r} for asset {label!r} on {day}"
        )
    return value


def _build_series(label: str, obs: list[tuple[date, float]]) -> PriceSeries:
    obs.sort(key=lambda pair: pair[0])
    for (d1, _), (d2, _) in zip(obs, obs[1:]):
        if d1 == d2:
            raise InputError(f"asset {label!r}: duplicate date {d1}")
    return PriceSeries(
        label=label,
        dates=[d for d, _ in obs],
        prices=np.array([p for _, p in obs], dtype=float),
    )


def load_csv(path: str | Path, layout: str = "wide") -> list[PriceSeries]:
    """Parse a price CSV into one PriceSeries per asset.

    Rows may appear out of date order; each series is sorted after parsing.
    Empty cells in the wide layout mean "no observation for that asset on
    that date" (ragged calendars); non-numeric or non-positive prices are
    hard errors. Duplicate dates within one asset are rejected.
    """
    if layout not in ("wide", "long"):
        raise InputError(f"unknown layout {layout!r} (expected 'wide' or 'long')")
    path = Path(path)
    try:
        with open(path, encoding="utf-8-sig", newline="") as fh:
            rows = list(csv.reader(fh))
    except (FileNotFoundError, IsADirectoryError) as exc:
        raise InputError(str(exc)) from None
    rows = [(i + 1, row) for i, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not rows:
        raise InputError(f"{path}: empty file")
    header_no, header = rows[0]
    data = rows[1:]
    if not data:
        raise InputError(f"{path}: no data rows")

    if layout == "wide":
        labels = [cell.strip() for cell in header[1:]]
        if not labels or any(not lab for lab in labels):
            raise InputError(f"line {header_no}: wide header needs 'date,LABEL1,...'")
        if len(set(labels)) != len(labels):
            raise InputError(f"line {header_no}: duplicate asset labels in header")
        obs: dict[str, list[tuple[date, float]]] = {lab: [] for lab in labels}
        for line_no, row in data:
            if len(row) != len(header):
                raise InputError(
                    f"line {line_no}: expected {len(header)} columns, got {len(row)}"
                )
            day = _parse_date(row[0], line_no)
            for lab, cell in zip(labels, row[1:]):
                if cell.strip() == "":
                    continue  # missing observation, reconciled by align()
                obs[lab].append((day, _parse_price(cell, lab, day, line_no)))
        return [_build_series(lab, obs[lab]) for lab in labels]

    # long layout
    obs = {}
    order: list[str] = []
    for line_no, row in data:
        if len(row) != 3:
            raise InputError(f"line {line_no}: long layout needs 'date,label,price'")
        day = _parse_date(row[0], line_no)
        lab = row[1].strip()
        if not lab:
            raise InputError(f"line {line_no}: empty asset label")
        if lab not in obs:
            obs[lab] = []
            order.append(lab)
        obs[lab].append((day, _parse_price(row[2], lab, day, line_no)))
    return [_build_series(lab, obs[lab]) for lab in order]


def align(
    series: list[PriceSeries],
    policy: str = "intersection",
    max_gap: int | None = None,
) -> PricePanel:
    """Place series on a common calendar.

    ``intersection`` keeps only dates present in every series.
    ``forward_fill`` works on the union calendar: a missing date is filled
    with the asset's last observed price while the run of consecutive
    missing union-dates stays <= max_gap; otherwise that date is dropped
    for all assets. Dates before an asset's first observation are dropped.
    """
    if len(series) < 2:
        raise InputError("alignment needs at least 2 series")
    if any(len(s.dates) < 3 for s in series):
        raise InputError("every series needs at least 3 observations")
    labels = [s.label for s in series]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate series labels")

    if policy == "intersection":
        common = set(series[0].dates)
        for s in series[1:]:
            common &= set(s.dates)
        kept = sorted(common)
        if len(kept) < 3:
            raise InputError("insufficient overlap")
        columns = []
        for s in series:
            lookup = dict(zip(s.dates, s.prices))
            columns.append([lookup[d] for d in kept])
        return PricePanel(labels=labels, dates=kept, prices=np.asarray(columns, dtype=float))

    if policy != "forward_fill":
        raise InputError(f"unknown alignment policy {policy!r}")
    if max_gap is None or max_gap < 0:
        raise InputError("forward_fill requires max_gap >= 0")

    union = sorted({d for s in series for d in s.dates})
    filled = np.empty((len(series), len(union)))
    ok = np.ones(len(union), dtype=bool)
    for i, s in enumerate(series):
        lookup = dict(zip(s.dates, s.prices))
        last = None
        gap = 0
        for j, d in enumerate(union):
            if d in lookup:
                last = lookup[d]
                gap = 0
                filled[i, j] = last
            else:
                gap += 1
                if last is None or gap > max_gap:
                    ok[j] = False
                else:
                    filled[i, j] = last
    kept = [d for d, keep in zip(union, ok) if keep]
    if len(kept) < 3:
        raise InputError("insufficient overlap")
    return PricePanel(labels=labels, dates=kept, prices=filled[:, ok])


def restrict_dates(
    panel: PricePanel, start: date | None = None, end: date | None = None
) -> PricePanel:
    """Keep panel dates within [start, end] (either bound optional)."""
    keep = [
        j
        for j, d in enumerate(panel.dates)
        if (start is None or d >= start) and (end is None or d <= end)
    ]
    if len(keep) < 3:
        raise InputError("insufficient overlap")
    return PricePanel(
        labels=list(panel.labels),
        dates=[panel.dates[j] for j in keep],
        prices=panel.prices[:, keep],
    )
