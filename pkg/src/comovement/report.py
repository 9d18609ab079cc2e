"""Artifact writers: plot-ready CSV tables and JSON reports.

Every file is written atomically (temp file + rename) and floats go out
with 17 significant digits so a read-back reproduces the doubles exactly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from pathlib import Path
from typing import Iterable

import numpy as np

from .clustering import ClusterTree, CommunityAssignment, to_newick, tree_to_json
from .correlation import CorrelationMatrix, correlation_to_csv
from .participation import CollectiveReport, Histogram


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)
    return path


def write_json(obj: dict, path: str | Path) -> Path:
    return atomic_write_text(path, json.dumps(obj, indent=2) + "\n")


def _write_csv_rows(path: str | Path, rows: Iterable[Iterable[str]]) -> Path:
    lines = [",".join(row) for row in rows]
    return atomic_write_text(path, "\n".join(lines) + "\n")


def write_report_json(report: CollectiveReport, path: str | Path) -> Path:
    return write_json(report.to_json_dict(), path)


def write_pr_csv(report: CollectiveReport, path: str | Path) -> Path:
    """Per-eigenvector table in descending-eigenvalue order (k is 1-based rank)."""
    rows = [["k", "lambda", "pr", "pr_normalized", "pr_shuffled_mean"]]
    for k in range(len(report.pr)):
        rows.append(
            [
                str(k + 1),
                _fmt(report.eigenvalues[k]),
                _fmt(report.pr[k]),
                _fmt(report.pr_normalized[k]),
                _fmt(report.pr_shuffled_mean[k]),
            ]
        )
    return _write_csv_rows(path, rows)


def write_npr_csv(report: CollectiveReport, path: str | Path) -> Path:
    """Per-asset table sorted ascending by NPR (the sorted-curve view).

    The shuffled column is the positional mean of each ensemble member's
    ascending-sorted NPRs, so it belongs to the curve position, not the label.
    """
    order = np.argsort(report.npr, kind="stable")
    rows = [["label", "npr", "independency", "npr_shuffled_sorted_mean"]]
    for pos, idx in enumerate(order):
        rows.append(
            [
                report.labels[idx],
                _fmt(report.npr[idx]),
                _fmt(report.independency[idx]),
                _fmt(report.npr_shuffled_sorted_mean[pos]),
            ]
        )
    return _write_csv_rows(path, rows)


def write_histogram_csv(hist: Histogram, path: str | Path) -> Path:
    lines = []
    if hist.degenerate:
        lines.append("# degenerate: all values identical, single synthetic bin")
    lines.append("bin_left,bin_right,density")
    for left, right, density in zip(hist.edges[:-1], hist.edges[1:], hist.densities):
        lines.append(f"{_fmt(left)},{_fmt(right)},{_fmt(density)}")
    return atomic_write_text(path, "\n".join(lines) + "\n")


def read_histogram_csv(path: str | Path) -> Histogram:
    degenerate = False
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            if row[0].startswith("#"):
                degenerate = True
                continue
            if row[0] == "bin_left":
                continue
            rows.append([float(cell) for cell in row])
    edges = np.array([r[0] for r in rows] + [rows[-1][1]])
    return Histogram(
        edges=edges, densities=np.array([r[2] for r in rows]), degenerate=degenerate
    )


def write_newick_file(tree: ClusterTree, labels: list[str], path: str | Path) -> Path:
    return atomic_write_text(path, to_newick(tree, labels) + "\n")


def write_tree_json(tree: ClusterTree, labels: list[str], path: str | Path) -> Path:
    return write_json(tree_to_json(tree, labels), path)


def write_communities_csv(assignment: CommunityAssignment, path: str | Path) -> Path:
    rows = [["label", "community_id"]]
    rows += [
        [lab, str(int(cid))] for lab, cid in zip(assignment.labels, assignment.community)
    ]
    return _write_csv_rows(path, rows)


def write_heatmap_csv(reordered: CorrelationMatrix, path: str | Path) -> Path:
    tmp = Path(path).with_name(Path(path).name + ".tmp")
    correlation_to_csv(reordered, tmp)
    os.replace(tmp, path)
    return Path(path)


def write_leaf_order_json(tree: ClusterTree, labels: list[str], path: str | Path) -> Path:
    return write_json(
        {
            "leaf_order": list(tree.leaf_order),
            "labels": [labels[i] for i in tree.leaf_order],
        },
        path,
    )


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
