"""Agglomerative clustering of assets by correlation distance.

Distance: d = sqrt(2 (1 - C)), mapping correlation 1 -> 0, 0 -> sqrt(2),
-1 -> 2. Merging is the standard agglomerative procedure (single, complete
or average linkage) with deterministic tie-breaking: among equally close
pairs the smallest (left id, right id) merges first. Leaves are 0..N-1 and
each merge creates cluster id N+step, so a tree over N assets has exactly
N-1 merges.

Communities come from cutting the tree at the height equivalent to a
correlation threshold: h* = sqrt(2 (1 - threshold)). Maximal subtrees whose
merges all sit below h* form communities; assets left alone are reported
as unclustered (-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .correlation import CorrelationMatrix
from .errors import InputError

LINKAGES = ("average", "single", "complete")


@dataclass
class ClusterTree:
    merges: list[tuple[int, int, float]]  # (left id, right id, height)
    leaf_order: list[int]  # DFS order, smaller subtree first

    @property
    def n_leaves(self) -> int:
        return len(self.merges) + 1


@dataclass
class CommunityAssignment:
    labels: list[str]
    community: np.ndarray  # per-asset id, -1 for unclustered singletons
    threshold_corr: float


def correlation_distance(C: CorrelationMatrix) -> np.ndarray:
    """Elementwise sqrt(2 (1 - C)) with an exactly zero diagonal."""
    d = np.sqrt(np.maximum(2.0 * (1.0 - C.values), 0.0))
    np.fill_diagonal(d, 0.0)
    return d


def threshold_height(threshold_corr: float) -> float:
    """Distance-scale cut height equivalent to a correlation threshold."""
    if not -1.0 < threshold_corr < 1.0:
        raise InputError("correlation threshold must be in (-1, 1)")
    return float(np.sqrt(2.0 * (1.0 - threshold_corr)))


def agglomerate(d: np.ndarray, linkage: str = "average") -> ClusterTree:
    """Merge the two closest clusters until one remains (Lance-Williams updates)."""
    if linkage not in LINKAGES:
        raise InputError(f"unknown linkage {linkage!r} (expected one of {LINKAGES})")
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if d.ndim != 2 or d.shape[1] != n or n < 2:
        raise InputError("distance matrix must be square with N >= 2")
    if np.any(np.diag(d) != 0.0) or np.abs(d - d.T).max() > 1e-12 or np.any(d < 0.0):
        raise InputError("distance matrix must be symmetric, non-negative, zero diagonal")

    total = 2 * n - 1
    D = np.full((total, total), np.inf)
    D[:n, :n] = d
    sizes = np.ones(total, dtype=int)
    active = list(range(n))  # kept sorted ascending
    merges: list[tuple[int, int, float]] = []

    for step in range(n - 1):
        ids = np.asarray(active)
        sub = D[np.ix_(ids, ids)]
        iu, ju = np.triu_indices(len(ids), k=1)
        pair_d = sub[iu, ju]
        best = pair_d.min()
        # row-major upper-triangle order == lexicographic (left, right) over sorted ids
        pos = int(np.flatnonzero(pair_d == best)[0])
        a, b = int(ids[iu[pos]]), int(ids[ju[pos]])
        new = n + step
        rest = np.asarray([k for k in active if k != a and k != b], dtype=int)
        if rest.size:
            if linkage == "single":
                merged = np.minimum(D[a, rest], D[b, rest])
            elif linkage == "complete":
                merged = np.maximum(D[a, rest], D[b, rest])
            else:
                merged = (sizes[a] * D[a, rest] + sizes[b] * D[b, rest]) / (
                    sizes[a] + sizes[b]
                )
            D[new, rest] = merged
            D[rest, new] = merged
        sizes[new] = sizes[a] + sizes[b]
        merges.append((a, b, float(best)))
        active.remove(a)
        active.remove(b)
        active.append(new)
        active.sort()

    return ClusterTree(merges=merges, leaf_order=_dfs_leaf_order(merges, n))


def _dfs_leaf_order(merges: list[tuple[int, int, float]], n: int) -> list[int]:
    """Depth-first leaf order, visiting the smaller subtree first (ties: smaller id)."""
    sizes = {i: 1 for i in range(n)}
    for idx, (a, b, _) in enumerate(merges):
        sizes[n + idx] = sizes[a] + sizes[b]
    order: list[int] = []
    stack = [2 * n - 2]
    while stack:
        node = stack.pop()
        if node < n:
            order.append(node)
            continue
        a, b, _ = merges[node - n]
        first, second = (a, b) if (sizes[a], a) <= (sizes[b], b) else (b, a)
        stack.append(second)  # LIFO: push second so `first` is visited first
        stack.append(first)
    return order


def cut_at_correlation(
    tree: ClusterTree, threshold_corr: float, labels: Sequence[str]
) -> CommunityAssignment:
    """Communities from cutting the tree at the correlation-equivalent height.

    Community ids are assigned in order of each community's smallest leaf
    index; singletons get -1.
    """
    n = tree.n_leaves
    if len(labels) != n:
        raise InputError("labels do not match tree size")
    h_cut = threshold_height(threshold_corr)
    parent = list(range(2 * n - 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, (a, b, h) in enumerate(tree.merges):
        if h < h_cut:
            node = n + idx
            parent[find(a)] = node
            parent[find(b)] = node

    roots = [find(leaf) for leaf in range(n)]
    members: dict[int, list[int]] = {}
    for leaf, root in enumerate(roots):
        members.setdefault(root, []).append(leaf)
    community = np.full(n, -1, dtype=int)
    next_id = 0
    for leaf in range(n):
        group = members[roots[leaf]]
        if len(group) < 2 or community[leaf] != -1:
            continue
        community[group] = next_id
        next_id += 1
    return CommunityAssignment(
        labels=list(labels), community=community, threshold_corr=threshold_corr
    )


def reorder_heatmap(C: CorrelationMatrix, tree: ClusterTree) -> CorrelationMatrix:
    """Permute rows/columns (and labels) by the tree's leaf order."""
    if tree.n_leaves != C.n:
        raise InputError("tree size does not match correlation matrix")
    perm = tree.leaf_order
    return CorrelationMatrix(
        labels=[C.labels[i] for i in perm], values=C.values[np.ix_(perm, perm)]
    )


def _newick_label(label: str) -> str:
    out = label
    for ch in " \t(),:;'\"[]":
        out = out.replace(ch, "_")
    return out


def to_newick(tree: ClusterTree, labels: Sequence[str]) -> str:
    """Newick string with merge heights encoded as branch lengths."""
    n = tree.n_leaves
    if len(labels) != n:
        raise InputError("labels do not match tree size")
    height = {i: 0.0 for i in range(n)}
    for idx, (_, _, h) in enumerate(tree.merges):
        height[n + idx] = h
    sizes = {i: 1 for i in range(n)}
    for idx, (a, b, _) in enumerate(tree.merges):
        sizes[n + idx] = sizes[a] + sizes[b]

    text: dict[int, str] = {}
    stack: list[tuple[int, bool]] = [(2 * n - 2, False)]
    while stack:
        node, expanded = stack.pop()
        if node < n:
            text[node] = _newick_label(labels[node])
            continue
        a, b, _ = tree.merges[node - n]
        first, second = (a, b) if (sizes[a], a) <= (sizes[b], b) else (b, a)
        if not expanded:
            stack.append((node, True))
            stack.append((second, False))
            stack.append((first, False))
            continue
        h = height[node]
        parts = [
            f"{text[first]}:{format(h - height[first], '.17g')}",
            f"{text[second]}:{format(h - height[second], '.17g')}",
        ]
        text[node] = "(" + ",".join(parts) + ")"
    return text[2 * n - 2] + ";"


def tree_to_json(tree: ClusterTree, labels: Sequence[str]) -> dict:
    """Merge list plus leaf order, for serialization."""
    return {
        "labels": list(labels),
        "merges": [[a, b, float(h)] for a, b, h in tree.merges],
        "leaf_order": list(tree.leaf_order),
    }
