"""Complete-linkage agglomerative clustering over languages.

Clustering runs on distance d = 1 - similarity. At each step the two clusters
with the smallest maximum pairwise distance merge; that maximum becomes the
merge height, so heights never decrease. Leaves carry node ids 0..L-1 in
language order, internal nodes L..2L-2 in merge order. Linkage ties break on
the lexicographically smallest (min id, max id) pair, making every run fully
deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LanguageCode
from .errors import MalformedMatrix, OutOfRange, UnknownLanguage

MATRIX_TOL = 1e-9


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    node: int


@dataclass(frozen=True)
class Dendrogram:
    leaves: tuple[LanguageCode, ...]
    merges: tuple[Merge, ...]

    @property
    def root(self) -> int:
        return self.merges[-1].node

    def members(self, node: int) -> list[int]:
        """Leaf ids under a node, ascending."""
        L = len(self.leaves)
        if node < L:
            return [node]
        merge = self.merges[node - L]
        return sorted(self.members(merge.left) + self.members(merge.right))

    def height_of(self, node: int) -> float:
        L = len(self.leaves)
        return 0.0 if node < L else self.merges[node - L].height


def _check_matrix(values: np.ndarray) -> None:
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise MalformedMatrix(f"not square: {values.shape}")
    if values.shape[0] < 2:
        raise MalformedMatrix("need at least two languages")
    if not np.isfinite(values).all():
        raise MalformedMatrix("non-finite entries")
    if np.abs(values - values.T).max() > MATRIX_TOL:
        raise MalformedMatrix("matrix is not symmetric")
    if np.abs(np.diag(values) - 1.0).max() > MATRIX_TOL:
        raise MalformedMatrix("diagonal is not 1")


def complete_linkage(
    languages: list[LanguageCode] | tuple[LanguageCode, ...], similarity: np.ndarray
) -> Dendrogram:
    """Cluster a symmetric unit-diagonal similarity matrix."""
    similarity = np.asarray(similarity, dtype=np.float64)
    _check_matrix(similarity)
    L = similarity.shape[0]
    if len(languages) != L:
        raise MalformedMatrix(f"{len(languages)} languages for a {L}x{L} matrix")

    # dist holds the current complete-linkage distance between active clusters
    dist: dict[tuple[int, int], float] = {}
    for i in range(L):
        for j in range(i + 1, L):
            dist[(i, j)] = 1.0 - float(similarity[i, j])
    active = set(range(L))
    merges = []
    for step in range(L - 1):
        best = min(dist.items(), key=lambda kv: (kv[1], kv[0]))
        (a, b), height = best
        node = L + step
        merges.append(Merge(a, b, height, node))
        active.discard(a)
        active.discard(b)
        for other in sorted(active):
            key_a = (min(a, other), max(a, other))
            key_b = (min(b, other), max(b, other))
            merged = max(dist.pop(key_a), dist.pop(key_b))
            dist[(other, node)] = merged
        del dist[(a, b)]
        active.add(node)
    return Dendrogram(tuple(languages), tuple(merges))


def cut(dendrogram: Dendrogram, k: int) -> list[list[LanguageCode]]:
    """Undo the last k-1 merges; groups come out sorted by smallest member."""
    L = len(dendrogram.leaves)
    if not 1 <= k <= L:
        raise OutOfRange(f"k={k} outside 1..{L}")
    nodes = {dendrogram.root}
    for merge in reversed(dendrogram.merges):
        if len(nodes) == k:
            break
        nodes.discard(merge.node)
        nodes.add(merge.left)
        nodes.add(merge.right)
    groups = [
        sorted(dendrogram.leaves[i] for i in dendrogram.members(node))
        for node in nodes
    ]
    return sorted(groups, key=lambda g: g[0])


def neighbors(dendrogram: Dendrogram, target: LanguageCode) -> set[LanguageCode]:
    """Members of the smallest non-singleton cluster containing the target.

    Equivalently: the leaves of the sibling subtree at the target's first
    merge, excluding the target itself.
    """
    if target not in dendrogram.leaves:
        raise UnknownLanguage(f"{target} is not a leaf")
    leaf = dendrogram.leaves.index(target)
    node = leaf
    for merge in dendrogram.merges:
        if merge.left == node or merge.right == node:
            sibling = merge.right if merge.left == node else merge.left
            return {dendrogram.leaves[i] for i in dendrogram.members(sibling)}
    raise UnknownLanguage(f"{target} never merges")  # unreachable on valid trees


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return s if s else "0"


def to_newick(dendrogram: Dendrogram) -> str:
    """Newick text with branch lengths = height deltas, lower node id first."""
    L = len(dendrogram.leaves)

    def render(node: int, parent_height: float) -> str:
        length = _fmt(parent_height - dendrogram.height_of(node))
        if node < L:
            return f"{dendrogram.leaves[node]}:{length}"
        merge = dendrogram.merges[node - L]
        inner = f"({render(merge.left, merge.height)},{render(merge.right, merge.height)})"
        return f"{inner}:{length}"

    root = dendrogram.merges[-1]
    left = render(root.left, root.height)
    right = render(root.right, root.height)
    return f"({left},{right});"


def to_merge_json(dendrogram: Dendrogram) -> str:
    payload = {
        "leaves": [str(c) for c in dendrogram.leaves],
        "merges": [
            {"left": m.left, "right": m.right, "height": round(m.height, 12), "node": m.node}
            for m in dendrogram.merges
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_merge_json(dendrogram: Dendrogram, path: str | Path) -> None:
    Path(path).write_text(to_merge_json(dendrogram), encoding="utf-8")
