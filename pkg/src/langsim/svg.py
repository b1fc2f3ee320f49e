"""Dependency-free SVG emitters for similarity heatmaps and dendrograms.

Output is byte-deterministic: fixed fonts, fixed precision, no timestamps.
The heatmap maps [-1, 1] (clamped) onto a two-stop linear RGB gradient from
dark blue (8, 48, 107) to pale yellow (255, 255, 229).
"""

from __future__ import annotations

import numpy as np

from .clustering import Dendrogram
from .corpus import LanguageCode

CELL = 12
LABEL_SPACE = 64
FONT = 'font-family="monospace" font-size="10"'

LOW_RGB = (8, 48, 107)
HIGH_RGB = (255, 255, 229)

DENDRO_HEIGHT = 400.0
DENDRO_STEP = 24
DENDRO_MARGIN = 20


def _color(value: float) -> str:
    t = (min(1.0, max(-1.0, value)) + 1.0) / 2.0
    rgb = [round(lo + t * (hi - lo)) for lo, hi in zip(LOW_RGB, HIGH_RGB)]
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def heatmap_svg(languages: tuple[LanguageCode, ...], values: np.ndarray) -> str:
    n = len(languages)
    width = LABEL_SPACE + n * CELL
    height = LABEL_SPACE + n * CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, code in enumerate(languages):
        y = LABEL_SPACE + i * CELL
        for j in range(n):
            x = LABEL_SPACE + j * CELL
            parts.append(
                f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                f'fill="{_color(float(values[i, j]))}"><title>'
                f"{code},{languages[j]}={values[i, j]:.6f}</title></rect>"
            )
        parts.append(
            f'<text x="{LABEL_SPACE - 4}" y="{y + CELL - 3}" text-anchor="end" {FONT}>{code}</text>'
        )
    for j, code in enumerate(languages):
        x = LABEL_SPACE + j * CELL + CELL - 3
        parts.append(
            f'<text x="{x}" y="{LABEL_SPACE - 4}" text-anchor="start" {FONT} '
            f'transform="rotate(-90 {x} {LABEL_SPACE - 4})">{code}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _leaf_order(dendrogram: Dendrogram) -> list[int]:
    L = len(dendrogram.leaves)
    order: list[int] = []

    def walk(node: int) -> None:
        if node < L:
            order.append(node)
            return
        merge = dendrogram.merges[node - L]
        walk(merge.left)
        walk(merge.right)

    walk(dendrogram.root)
    return order


def dendrogram_svg(dendrogram: Dendrogram) -> str:
    """Leaves evenly spaced along the bottom, merge bars at scaled heights."""
    L = len(dendrogram.leaves)
    order = _leaf_order(dendrogram)
    xpos = {leaf: DENDRO_MARGIN + rank * DENDRO_STEP for rank, leaf in enumerate(order)}
    max_height = max(m.height for m in dendrogram.merges)
    scale = DENDRO_HEIGHT / max_height if max_height > 0 else 0.0
    base_y = DENDRO_MARGIN + DENDRO_HEIGHT

    def y_of(height: float) -> float:
        return base_y - height * scale

    width = 2 * DENDRO_MARGIN + (L - 1) * DENDRO_STEP
    height_px = base_y + LABEL_SPACE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height_px}" '
        f'viewBox="0 0 {width} {height_px}">',
        f'<rect width="{width}" height="{height_px}" fill="white"/>',
    ]
    node_x: dict[int, float] = dict(xpos)
    node_y: dict[int, float] = {leaf: base_y for leaf in range(L)}
    for merge in dendrogram.merges:
        xl, xr = node_x[merge.left], node_x[merge.right]
        yl, yr = node_y[merge.left], node_y[merge.right]
        ym = y_of(merge.height)
        path = (
            f"M {xl:.2f} {yl:.2f} L {xl:.2f} {ym:.2f} "
            f"L {xr:.2f} {ym:.2f} L {xr:.2f} {yr:.2f}"
        )
        parts.append(f'<path d="{path}" stroke="black" fill="none" stroke-width="1"/>')
        node_x[merge.node] = (xl + xr) / 2.0
        node_y[merge.node] = ym
    for leaf in range(L):
        x = node_x[leaf]
        parts.append(
            f'<text x="{x:.2f}" y="{base_y + 12:.2f}" text-anchor="end" {FONT} '
            f'transform="rotate(-90 {x:.2f} {base_y + 12:.2f})">{dendrogram.leaves[leaf]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
