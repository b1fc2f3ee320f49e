"""Pearson correlation between model similarity and linguistic measures.

For one target language and one measure, the similarity-to-others vector of
every layer is correlated against the measure's vector over the same
languages; the best layer is the argmax with ties broken toward lower layer
indices. Reports summarize best-layer correlations over all targets with mean
and median.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LanguageCode
from .errors import ConstantInput, LengthMismatch, TooFew, UnknownLanguage
from .measures import MeasureKind, MeasureTable, to_similarity
from .similarity import LayerSimilaritySet


def pearson(x, y) -> float:
    """Sample Pearson correlation, two-pass mean-centered form."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"shapes {x.shape} and {y.shape}")
    if x.size < 2:
        raise TooFew("need at least two points")
    # literal constancy first: mean-centering a constant vector can leave
    # rounding dust, which would otherwise slip past the variance check
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ConstantInput("zero variance input")
    xd = x - x.mean()
    yd = y - y.mean()
    sx = float(xd @ xd)
    sy = float(yd @ yd)
    if sx == 0.0 or sy == 0.0:
        raise ConstantInput("zero variance input")
    r = float(xd @ yd) / math.sqrt(sx * sy)
    return min(1.0, max(-1.0, r))


def target_layer_correlations(
    sims: LayerSimilaritySet, measure: MeasureTable, target: LanguageCode
) -> tuple[np.ndarray, int]:
    """Per-layer correlation for one target; returns (r vector, pair count).

    The usable-language set is fixed once per (target, measure): languages
    other than the target whose measure cell against the target is present.
    Every layer is restricted to that same set so layers stay comparable.
    """
    if target not in sims.languages:
        raise UnknownLanguage(f"{target} not in similarity set")
    measure = to_similarity(measure)
    others = [code for code in sims.languages if code != target]
    usable = [c for c in others if measure.value_at(target, c) is not None]
    if len(usable) < 2:
        raise TooFew(f"{target}: {len(usable)} usable languages for {measure.name}")
    cols = [sims.languages.index(c) for c in usable]
    t = sims.languages.index(target)
    y = np.array([measure.value_at(target, c) for c in usable], dtype=np.float64)
    r = np.empty(sims.n_layers, dtype=np.float64)
    for pos in range(sims.n_layers):
        x = sims.matrices[pos][t, cols]
        r[pos] = pearson(x, y)
    return r, len(usable)


def best_layer(r_per_layer: np.ndarray) -> tuple[int, float]:
    """Argmax layer with lowest-index tie-break."""
    r = np.asarray(r_per_layer, dtype=np.float64)
    if r.size == 0:
        raise TooFew("no layers")
    idx = int(np.argmax(r))  # argmax returns the first maximum
    return idx, float(r[idx])


def summarize(r_values) -> tuple[float, float]:
    """(mean, median); even-length median averages the two middle values."""
    vals = sorted(float(v) for v in r_values)
    if not vals:
        raise TooFew("nothing to summarize")
    n = len(vals)
    mean = sum(vals) / n
    mid = n // 2
    median = vals[mid] if n % 2 else (vals[mid - 1] + vals[mid]) / 2.0
    return mean, median


@dataclass(frozen=True)
class TargetRow:
    target: LanguageCode
    best_layer: int
    r_best: float
    r_per_layer: np.ndarray
    n_pairs: int


@dataclass(frozen=True)
class CorrelationReport:
    measure: str
    rows: tuple[TargetRow, ...]
    skipped: tuple[tuple[LanguageCode, str], ...]
    mean: float
    median: float

    def layer_means(self) -> np.ndarray:
        """Mean correlation per layer across targets (same restriction sets)."""
        return np.mean([row.r_per_layer for row in self.rows], axis=0)


def correlation_report(
    sims: LayerSimilaritySet,
    measure: MeasureTable,
    targets: list[LanguageCode] | None = None,
) -> CorrelationReport:
    """Best-layer correlation rows for every target, plus MEAN and MEDIAN.

    Targets whose measure coverage leaves fewer than two usable languages are
    skipped and reported separately rather than poisoning the summary.
    """
    if targets is None:
        targets = list(sims.languages)
    rows = []
    skipped = []
    for target in targets:
        try:
            r, n_pairs = target_layer_correlations(sims, measure, target)
        except (TooFew, ConstantInput) as exc:
            skipped.append((target, str(exc)))
            continue
        layer_pos, r_best = best_layer(r)
        rows.append(
            TargetRow(target, sims.layer_indices[layer_pos], r_best, r, n_pairs)
        )
    if not rows:
        raise TooFew(f"{measure.name}: no usable targets")
    mean, median = summarize(row.r_best for row in rows)
    return CorrelationReport(measure.name, tuple(rows), tuple(skipped), mean, median)


def write_report_csv(report: CorrelationReport, sims: LayerSimilaritySet, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(
            ["target", "best_layer", "r_best", "n_pairs"]
            + [f"r_layer_{i:02d}" for i in sims.layer_indices]
        )
        for row in report.rows:
            w.writerow(
                [str(row.target), row.best_layer, f"{row.r_best:.6f}", row.n_pairs]
                + [f"{v:.6f}" for v in row.r_per_layer]
            )
        for target, _reason in report.skipped:
            w.writerow([str(target), "skipped", "", 0] + [""] * sims.n_layers)


def write_summary_json(report: CorrelationReport, path: str | Path) -> None:
    payload = {
        "measure": report.measure,
        "mean": round(report.mean, 6),
        "median": round(report.median, 6),
        "n_targets": len(report.rows),
        "n_skipped": len(report.skipped),
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_layer_curve_csv(report: CorrelationReport, sims: LayerSimilaritySet, path: str | Path) -> None:
    """Mean correlation across targets, one row per layer."""
    means = report.layer_means()
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["layer", "mean_r"])
        for layer, value in zip(sims.layer_indices, means):
            w.writerow([layer, f"{value:.6f}"])
