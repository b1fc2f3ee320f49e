"""Source-language selection and transfer-score aggregation.

Given a similarity matrix (model-derived or a linguistic measure), each
target language gets the most similar source from a fixed candidate set; a
target with no usable similarity falls back to a default source. Downstream
scores live in a target-by-source table, and selections are judged by their
macro-average score over targets.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LanguageCode, parse_language_code
from .errors import (
    EmptySources,
    MissingScore,
    ParseError,
    UnknownTarget,
)
from .measures import MeasureKind, MeasureTable, make_measure_table
from .similarity import LayerSimilaritySet

# Default candidate sources: high-resource, typologically diverse.
DEFAULT_SOURCES = (
    parse_language_code("arb_Arab"),
    parse_language_code("cmn_Hani"),
    parse_language_code("eng_Latn"),
    parse_language_code("hin_Deva"),
    parse_language_code("rus_Cyrl"),
    parse_language_code("spa_Latn"),
)
DEFAULT_FALLBACK = parse_language_code("eng_Latn")

# Model layer that worked best per task for model-derived selection.
TASK_BEST_LAYER = {"ner": 1, "pos": 2, "massive": 8, "taxi1500": 4}


@dataclass(frozen=True)
class Selection:
    source: LanguageCode
    provenance: str


@dataclass(frozen=True)
class SelectionMap:
    entries: dict[LanguageCode, Selection]

    def targets(self) -> list[LanguageCode]:
        return list(self.entries)

    def source_of(self, target: LanguageCode) -> LanguageCode:
        return self.entries[target].source


@dataclass(frozen=True)
class ScoreTable:
    """Downstream scores per (target, source); missing cells are allowed."""

    task: str
    targets: tuple[LanguageCode, ...]
    sources: tuple[LanguageCode, ...]
    scores: np.ndarray
    missing: np.ndarray

    def __post_init__(self) -> None:
        if len(set(self.sources)) != len(self.sources):
            raise ParseError(f"{self.task}: duplicate sources")
        if self.missing.all(axis=1).any():
            bad = self.targets[int(np.nonzero(self.missing.all(axis=1))[0][0])]
            raise ParseError(f"{self.task}: target {bad} has no scores at all")

    def score_at(self, target: LanguageCode, source: LanguageCode) -> float:
        if target not in self.targets:
            raise UnknownTarget(f"{self.task}: unknown target {target}")
        if source not in self.sources:
            raise MissingScore(f"{self.task}: {source} is not a source column")
        i = self.targets.index(target)
        j = self.sources.index(source)
        if self.missing[i, j]:
            raise MissingScore(f"{self.task}: no score for ({target}, {source})")
        return float(self.scores[i, j])


def layer_as_measure(sims: LayerSimilaritySet, layer: int, name: str = "model") -> MeasureTable:
    """View one layer of a similarity set as a measure table for selection."""
    return make_measure_table(
        f"{name}:layer={layer}", sims.languages, sims.layer(layer), kind=MeasureKind.SIMILARITY
    )


def select_sources(
    sim: MeasureTable,
    targets: list[LanguageCode],
    sources: list[LanguageCode] | tuple[LanguageCode, ...] = DEFAULT_SOURCES,
    default: LanguageCode = DEFAULT_FALLBACK,
) -> SelectionMap:
    """Most similar source per target, excluding the target itself.

    A target absent from the matrix, or with every candidate cell missing,
    takes the default source with provenance "fallback". Ties break by source
    list order.
    """
    sources = list(sources)
    if not sources:
        raise EmptySources("no candidate sources")
    if default not in sources:
        raise EmptySources(f"default {default} not among sources")
    entries = {}
    for target in targets:
        best: tuple[float, int] | None = None
        for rank, source in enumerate(sources):
            if source == target:
                continue
            value = sim.value_at(target, source)
            if value is None:
                continue
            if best is None or value > best[0]:
                best = (value, rank)
        if best is None:
            entries[target] = Selection(default, "fallback")
        else:
            entries[target] = Selection(sources[best[1]], sim.name)
    return SelectionMap(entries)


def constant_selection(targets: list[LanguageCode], source: LanguageCode) -> SelectionMap:
    """Same source for every target; the all-English baseline."""
    return SelectionMap({t: Selection(source, "ENG") for t in targets})


def evaluate(
    table: ScoreTable, selection: SelectionMap
) -> tuple[dict[LanguageCode, float], float]:
    """Per-target scores for the chosen sources, plus their unweighted mean."""
    per_target = {}
    for target in selection.targets():
        per_target[target] = table.score_at(target, selection.source_of(target))
    if not per_target:
        raise UnknownTarget(f"{table.task}: empty selection")
    macro = sum(per_target.values()) / len(per_target)
    return per_target, macro


@dataclass(frozen=True)
class DeltaRow:
    target: LanguageCode
    score_a: float
    source_a: LanguageCode
    score_b: float
    source_b: LanguageCode
    delta: float


def delta_table(table: ScoreTable, a: SelectionMap, b: SelectionMap) -> list[DeltaRow]:
    """Per-target gain of selection b over selection a, sorted by gain descending.

    Both selections must cover every target of the table. Equal gains order by
    target code for determinism.
    """
    rows = []
    for target in table.targets:
        if target not in a.entries or target not in b.entries:
            raise UnknownTarget(f"{table.task}: {target} missing from a selection map")
        sa, sb = a.source_of(target), b.source_of(target)
        va, vb = table.score_at(target, sa), table.score_at(target, sb)
        rows.append(DeltaRow(target, va, sa, vb, sb, vb - va))
    rows.sort(key=lambda r: (-r.delta, r.target))
    return rows


def top_bottom(rows: list[DeltaRow], n: int) -> tuple[list[DeltaRow], list[DeltaRow]]:
    """First and last n rows of a sorted delta table."""
    return rows[:n], rows[-n:]


# CSV and JSON surfaces


def load_score_csv(path: str | Path, task: str | None = None) -> ScoreTable:
    """Header "target,<source>,..."; empty cells are missing scores."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0][:1] != ["target"]:
        raise ParseError(f"{path.name}: expected header starting with 'target'")
    sources = tuple(parse_language_code(c) for c in rows[0][1:])
    targets = []
    scores = []
    missing = []
    for i, row in enumerate(rows[1:]):
        if len(row) != len(sources) + 1:
            raise ParseError(f"{path.name}: row {i + 2} has {len(row)} cells")
        targets.append(parse_language_code(row[0]))
        vals = []
        miss = []
        for cell in row[1:]:
            if cell.strip() == "":
                vals.append(0.0)
                miss.append(True)
            else:
                try:
                    vals.append(float(cell))
                except ValueError as exc:
                    raise ParseError(f"{path.name}: bad score {cell!r} at row {i + 2}") from exc
                miss.append(False)
        scores.append(vals)
        missing.append(miss)
    return ScoreTable(
        task or path.stem,
        tuple(targets),
        sources,
        np.array(scores, dtype=np.float64),
        np.array(missing, dtype=bool),
    )


def load_selection_csv(path: str | Path) -> SelectionMap:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != ["target", "source", "provenance"]:
        raise ParseError(f"{path.name}: expected header target,source,provenance")
    entries = {}
    for row in rows[1:]:
        if len(row) != 3:
            raise ParseError(f"{path.name}: malformed row {row}")
        entries[parse_language_code(row[0])] = Selection(parse_language_code(row[1]), row[2])
    return SelectionMap(entries)


def write_selection_csv(selection: SelectionMap, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["target", "source", "provenance"])
        for target, entry in selection.entries.items():
            w.writerow([str(target), str(entry.source), entry.provenance])


def write_delta_csv(rows: list[DeltaRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["target", "score_a", "source_a", "score_b", "source_b", "delta"])
        for r in rows:
            w.writerow(
                [
                    str(r.target),
                    f"{r.score_a:.6f}",
                    str(r.source_a),
                    f"{r.score_b:.6f}",
                    str(r.source_b),
                    f"{r.delta:.6f}",
                ]
            )


def write_macro_json(task: str, macro: float, n_targets: int, path: str | Path) -> None:
    payload = {"task": task, "macro_average": round(macro, 6), "n_targets": n_targets}
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
