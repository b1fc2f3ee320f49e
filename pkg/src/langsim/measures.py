"""Linguistic measure tables with explicit missing-value tracking.

Typological similarity and distance tables (genealogical, geographic,
syntactic, phoneme-inventory, phonological, combined-feature) arrive as CSV
data; nothing here recomputes them. Distances are expected pre-normalized to
[0, 1] and convert to similarity as 1 - d, which is affine and therefore
leaves Pearson correlations intact up to sign.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from .corpus import LanguageCode
from .errors import AsymmetryError, ParseError
from .matrixcsv import read_matrix_csv, write_matrix_csv

SYMMETRY_TOL = 1e-9


class MeasureKind(Enum):
    SIMILARITY = "similarity"
    DISTANCE = "distance"


@dataclass(frozen=True)
class MeasureTable:
    """Square table of pairwise values with a boolean missing mask."""

    name: str
    languages: tuple[LanguageCode, ...]
    values: np.ndarray
    missing: np.ndarray
    kind: MeasureKind

    def index(self, code: LanguageCode) -> int:
        return self.languages.index(code)

    def value_at(self, a: LanguageCode, b: LanguageCode) -> float | None:
        """Cell value, or None when missing or when a language is absent."""
        if a not in self.languages or b not in self.languages:
            return None
        i, j = self.index(a), self.index(b)
        if self.missing[i, j]:
            return None
        return float(self.values[i, j])


def _check_table(name: str, values: np.ndarray, missing: np.ndarray, kind: MeasureKind) -> None:
    n = values.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if missing[i, j] != missing[j, i]:
                raise AsymmetryError(f"{name}: cell ({i},{j}) present on one side only")
            if not missing[i, j] and abs(values[i, j] - values[j, i]) > SYMMETRY_TOL:
                raise AsymmetryError(
                    f"{name}: {values[i, j]} vs {values[j, i]} at ({i},{j})"
                )
    diag_expected = 0.0 if kind is MeasureKind.DISTANCE else 1.0
    for i in range(n):
        if missing[i, i]:
            raise ParseError(f"{name}: missing diagonal cell {i}")
        if abs(values[i, i] - diag_expected) > SYMMETRY_TOL:
            raise ParseError(
                f"{name}: diagonal {values[i, i]} at {i}, expected {diag_expected}"
            )
    present = values[~missing]
    if present.size and (present.min() < 0.0 or present.max() > 1.0):
        warnings.warn(f"{name}: values outside [0, 1]; keeping as loaded", stacklevel=3)


def make_measure_table(
    name: str,
    languages: tuple[LanguageCode, ...],
    values: np.ndarray,
    missing: np.ndarray | None = None,
    kind: MeasureKind = MeasureKind.SIMILARITY,
) -> MeasureTable:
    """Validate and wrap an in-memory table (symmetry, diagonal, range warning)."""
    values = np.asarray(values, dtype=np.float64)
    if missing is None:
        missing = np.zeros(values.shape, dtype=bool)
    _check_table(name, values, missing, kind)
    return MeasureTable(name, tuple(languages), values, missing, kind)


def load_measure_csv(path: str | Path, kind: MeasureKind) -> MeasureTable:
    """Load a measure table; the measure name is the filename stem."""
    path = Path(path)
    languages, values, missing = read_matrix_csv(path)
    return make_measure_table(path.stem, tuple(languages), values, missing, kind)


def save_measure_csv(table: MeasureTable, path: str | Path) -> None:
    write_matrix_csv(path, table.languages, table.values, table.missing)


def to_similarity(table: MeasureTable) -> MeasureTable:
    """Map distances d to 1 - d; similarity tables pass through unchanged."""
    if table.kind is MeasureKind.SIMILARITY:
        return table
    values = np.where(table.missing, 0.0, 1.0 - table.values)
    return replace(table, values=values, kind=MeasureKind.SIMILARITY)
