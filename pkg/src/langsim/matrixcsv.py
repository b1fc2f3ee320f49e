"""Shared CSV layout for square language-by-language matrices.

Header row and first column carry rendered language codes; values are written
with 6 decimal digits; an empty cell marks a missing value.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .corpus import LanguageCode, parse_language_code
from .errors import ParseError, UnknownCodeError


def write_matrix_csv(
    path: str | Path,
    languages: list[LanguageCode] | tuple[LanguageCode, ...],
    values: np.ndarray,
    missing: np.ndarray | None = None,
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow([""] + [str(c) for c in languages])
        for i, code in enumerate(languages):
            row: list[str] = [str(code)]
            for j in range(len(languages)):
                if missing is not None and missing[i, j]:
                    row.append("")
                else:
                    row.append(f"{values[i, j]:.6f}")
            w.writerow(row)


def read_matrix_csv(path: str | Path) -> tuple[list[LanguageCode], np.ndarray, np.ndarray]:
    """Read a square matrix CSV; returns (languages, values, missing mask)."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or len(rows[0]) < 2:
        raise ParseError(f"{path.name}: empty or headerless matrix")
    try:
        languages = [parse_language_code(c) for c in rows[0][1:]]
    except Exception as exc:
        raise UnknownCodeError(f"{path.name}: {exc}") from exc
    n = len(languages)
    if len(rows) != n + 1:
        raise ParseError(f"{path.name}: expected {n} data rows, found {len(rows) - 1}")
    values = np.zeros((n, n), dtype=np.float64)
    missing = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ParseError(f"{path.name}: row {i + 2} has {len(row)} cells, expected {n + 1}")
        try:
            code = parse_language_code(row[0])
        except Exception as exc:
            raise UnknownCodeError(f"{path.name}: {exc}") from exc
        if code != languages[i]:
            raise ParseError(f"{path.name}: row {i + 2} is {code}, header says {languages[i]}")
        for j, cell in enumerate(row[1:]):
            if cell.strip() == "":
                missing[i, j] = True
            else:
                try:
                    values[i, j] = float(cell)
                except ValueError as exc:
                    raise ParseError(f"{path.name}: bad number {cell!r} at row {i + 2}") from exc
    return languages, values, missing
