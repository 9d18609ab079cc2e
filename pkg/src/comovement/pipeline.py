"""End-to-end pipeline: prices -> returns -> correlation -> metrics -> clusters.

Every output byte is a deterministic function of (input digest, config,
seed); the manifest records all three plus library versions.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import agglomerate, correlation_distance, cut_at_correlation, reorder_heatmap
from .correlation import correlate
from .errors import InputError
from .ingest import align, load_csv, restrict_dates
from .nullmodel import RNG_ALGORITHM
from .participation import collective_report, independency_pdf
from .report import (
    sha256_file,
    write_communities_csv,
    write_heatmap_csv,
    write_histogram_csv,
    write_json,
    write_leaf_order_json,
    write_newick_file,
    write_npr_csv,
    write_pr_csv,
    write_report_json,
)
from .returns import panel_returns

EMIT_CHOICES = ("report", "histogram", "dendrogram", "heatmap")


@dataclass
class RunConfig:
    input_path: Path
    out_dir: Path
    layout: str = "wide"
    align_policy: str = "intersection"
    max_gap: int | None = None
    date_from: date | None = None
    date_to: date | None = None
    ensemble: int = 100
    seed: int = 0
    linkage: str = "average"
    threshold: float = 0.3
    bins: int = 20
    emit: tuple[str, ...] = EMIT_CHOICES

    def __post_init__(self) -> None:
        self.input_path = Path(self.input_path)
        self.out_dir = Path(self.out_dir)
        if self.ensemble < 1:
            raise InputError("ensemble size must be >= 1")
        if not -1.0 < self.threshold < 1.0:
            raise InputError("community threshold must be in (-1, 1)")
        if self.bins < 2:
            raise InputError("histogram needs at least 2 bins")
        unknown = set(self.emit) - set(EMIT_CHOICES)
        if unknown:
            raise InputError(f"unknown emit targets: {sorted(unknown)}")

    def as_dict(self) -> dict:
        return {
            "input": str(self.input_path),
            "out": str(self.out_dir),
            "layout": self.layout,
            "align": self.align_policy,
            "max_gap": self.max_gap,
            "from": self.date_from.isoformat() if self.date_from else None,
            "to": self.date_to.isoformat() if self.date_to else None,
            "ensemble": self.ensemble,
            "seed": self.seed,
            "linkage": self.linkage,
            "threshold": self.threshold,
            "bins": self.bins,
            "emit": list(self.emit),
        }


@contextlib.contextmanager
def _stage(name: str):
    """Prefix any stage failure with the stage name, preserving the type."""
    try:
        yield
    except Exception as exc:
        exc.args = (f"{name}: {exc}",) + exc.args[1:]
        raise


def run_pipeline(cfg: RunConfig) -> list[Path]:
    """Run all stages and write the requested artifacts plus a manifest.

    Returns the written paths. On failure, files already written by this
    run are removed before the error propagates.
    """
    with _stage("ingest"):
        series = load_csv(cfg.input_path, layout=cfg.layout)
        panel = align(series, policy=cfg.align_policy, max_gap=cfg.max_gap)
        if cfg.date_from is not None or cfg.date_to is not None:
            panel = restrict_dates(panel, cfg.date_from, cfg.date_to)
        input_digest = sha256_file(cfg.input_path)
    with _stage("returns"):
        rp = panel_returns(panel)
    with _stage("correlation"):
        C = correlate(rp)
    with _stage("participation"):
        report = collective_report(C, cfg.ensemble, cfg.seed)
        hist = independency_pdf(report.independency, bins=cfg.bins)
    with _stage("clustering"):
        tree = agglomerate(correlation_distance(C), linkage=cfg.linkage)
        communities = cut_at_correlation(tree, cfg.threshold, C.labels)
        heatmap = reorder_heatmap(C, tree)

    written: list[Path] = []
    try:
        with _stage("report"):
            cfg.out_dir.mkdir(parents=True, exist_ok=True)
            out = cfg.out_dir
            if "report" in cfg.emit:
                written.append(write_report_json(report, out / "report.json"))
                written.append(write_pr_csv(report, out / "pr.csv"))
                written.append(write_npr_csv(report, out / "npr.csv"))
            if "histogram" in cfg.emit:
                written.append(write_histogram_csv(hist, out / "independency_hist.csv"))
            if "dendrogram" in cfg.emit:
                written.append(write_newick_file(tree, C.labels, out / "dendrogram.newick"))
                written.append(write_communities_csv(communities, out / "communities.csv"))
            if "heatmap" in cfg.emit:
                written.append(write_heatmap_csv(heatmap, out / "heatmap.csv"))
                written.append(
                    write_leaf_order_json(tree, C.labels, out / "heatmap_order.json")
                )
            manifest = {
                "config": cfg.as_dict(),
                "seed": cfg.seed,
                "rng": RNG_ALGORITHM,
                "input_sha256": input_digest,
                "versions": {"comovement": __version__, "numpy": np.__version__},
                "artifacts": [p.name for p in written],
            }
            written.append(write_json(manifest, out / "manifest.json"))
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written
