import numpy as np
import pytest

from conftest import FIXTURES
from langsim.corpus import parse_language_code
from langsim.errors import EmptySources, MissingScore, UnknownTarget
from langsim.measures import MeasureKind, load_measure_csv, make_measure_table
from langsim.transfer import (
    DEFAULT_FALLBACK,
    DEFAULT_SOURCES,
    ScoreTable,
    constant_selection,
    delta_table,
    evaluate,
    load_score_csv,
    load_selection_csv,
    select_sources,
    top_bottom,
    write_selection_csv,
)

TRANSFER = FIXTURES / "transfer"

ARB, CMN, ENG, HIN, RUS, SPA = DEFAULT_SOURCES
JPN = parse_language_code("jpn_Jpan")


@pytest.fixture(scope="module")
def ner_scores():
    return load_score_csv(TRANSFER / "scores_ner.csv", task="ner")


@pytest.fixture(scope="module")
def ner_model_matrix():
    return load_measure_csv(TRANSFER / "matrix_model_ner.csv", MeasureKind.SIMILARITY)


def small_table():
    targets = (JPN, parse_language_code("tur_Latn"))
    scores = np.array([[0.3, 0.9, 0.1, 0.2, 0.2, 0.2],
                       [0.5, 0.1, 0.6, 0.4, 0.0, 0.7]])
    missing = np.zeros((2, 6), dtype=bool)
    missing[1, 4] = True
    return ScoreTable("toy", targets, DEFAULT_SOURCES, scores, missing)


class TestSelectSources:
    def test_jpn_selects_cmn_from_model_matrix(self, ner_model_matrix):
        sel = select_sources(ner_model_matrix, [JPN])
        assert sel.source_of(JPN) == CMN
        assert sel.entries[JPN].provenance == "matrix_model_ner"

    def test_model_matrix_reproduces_whole_fixture_column(self, ner_model_matrix):
        expected = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        sel = select_sources(ner_model_matrix, expected.targets())
        for target in expected.targets():
            assert sel.source_of(target) == expected.source_of(target)

    def test_absent_target_falls_back(self, ner_model_matrix):
        ghost = parse_language_code("qqq_Latn")
        sel = select_sources(ner_model_matrix, [ghost])
        assert sel.source_of(ghost) == DEFAULT_FALLBACK
        assert sel.entries[ghost].provenance == "fallback"

    def test_all_missing_falls_back(self):
        langs = (JPN,) + DEFAULT_SOURCES
        values = np.eye(7)
        missing = ~np.eye(7, dtype=bool)
        sim = make_measure_table("GEN", langs, values, missing, MeasureKind.SIMILARITY)
        sel = select_sources(sim, [JPN])
        assert sel.source_of(JPN) == ENG
        assert sel.entries[JPN].provenance == "fallback"

    def test_target_excluded_from_own_candidates(self):
        langs = DEFAULT_SOURCES
        values = np.full((6, 6), 0.2)
        np.fill_diagonal(values, 1.0)
        # hin_Deva row: best available would be itself; next best rus
        values[3, 4] = values[4, 3] = 0.8
        sim = make_measure_table("toy", langs, values, kind=MeasureKind.SIMILARITY)
        sel = select_sources(sim, [HIN])
        assert sel.source_of(HIN) == RUS

    def test_tie_breaks_by_source_order(self):
        langs = (JPN,) + DEFAULT_SOURCES
        values = np.full((7, 7), 0.5)
        np.fill_diagonal(values, 1.0)
        sim = make_measure_table("toy", langs, values, kind=MeasureKind.SIMILARITY)
        sel = select_sources(sim, [JPN])
        assert sel.source_of(JPN) == ARB  # first in source order

    def test_selection_optimality(self, ner_model_matrix):
        targets = [parse_language_code(c) for c in ("jpn_Jpan", "tur_Latn", "yue_Hani")]
        sel = select_sources(ner_model_matrix, targets)
        for target in targets:
            chosen = ner_model_matrix.value_at(target, sel.source_of(target))
            for source in DEFAULT_SOURCES:
                if source == target:
                    continue
                other = ner_model_matrix.value_at(target, source)
                assert other is None or chosen >= other

    def test_monotone_rescaling_invariance(self, ner_model_matrix):
        targets = [JPN, parse_language_code("kor_Hang")]
        before = select_sources(ner_model_matrix, targets)
        squashed = make_measure_table(
            ner_model_matrix.name,
            ner_model_matrix.languages,
            np.tanh(3.0 * ner_model_matrix.values) / np.tanh(3.0),
            ner_model_matrix.missing,
            MeasureKind.SIMILARITY,
        )
        after = select_sources(squashed, targets)
        for t in targets:
            assert before.source_of(t) == after.source_of(t)

    def test_empty_sources(self, ner_model_matrix):
        with pytest.raises(EmptySources):
            select_sources(ner_model_matrix, [JPN], sources=[], default=ENG)

    def test_default_must_be_candidate(self, ner_model_matrix):
        with pytest.raises(EmptySources):
            select_sources(ner_model_matrix, [JPN], sources=[ARB], default=ENG)


class TestConstantSelection:
    def test_three_targets(self):
        targets = [JPN, ARB, RUS]
        sel = constant_selection(targets, ENG)
        assert [sel.source_of(t) for t in targets] == [ENG, ENG, ENG]

    def test_empty(self):
        assert constant_selection([], ENG).targets() == []

    def test_provenance_label(self):
        sel = constant_selection([JPN], ENG)
        assert sel.entries[JPN].provenance == "ENG"


class TestEvaluate:
    def test_single_target(self):
        table = small_table()
        sel = constant_selection([JPN], CMN)
        per_target, macro = evaluate(table, sel)
        assert per_target == {JPN: 0.9}
        assert macro == 0.9

    def test_constant_selection_equals_column_mean(self, ner_scores):
        sel = constant_selection(list(ner_scores.targets), ENG)
        _, macro = evaluate(ner_scores, sel)
        col = ner_scores.scores[:, ner_scores.sources.index(ENG)]
        assert macro == pytest.approx(col.mean(), abs=1e-12)

    def test_missing_cell_is_error(self):
        table = small_table()
        sel = constant_selection(list(table.targets), RUS)
        with pytest.raises(MissingScore):
            evaluate(table, sel)

    def test_unknown_target_is_error(self):
        table = small_table()
        sel = constant_selection([parse_language_code("zul_Latn")], ENG)
        with pytest.raises(UnknownTarget):
            evaluate(table, sel)


class TestDeltaTable:
    def test_identical_maps_give_zero(self, ner_scores):
        sel = constant_selection(list(ner_scores.targets), ENG)
        rows = delta_table(ner_scores, sel, sel)
        assert all(r.delta == 0.0 for r in rows)

    def test_antisymmetry_exact(self, ner_scores):
        a = load_selection_csv(TRANSFER / "selection_ner_gen.csv")
        b = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        forward = {r.target: r.delta for r in delta_table(ner_scores, a, b)}
        backward = {r.target: r.delta for r in delta_table(ner_scores, b, a)}
        for target, delta in forward.items():
            assert backward[target] == -delta

    def test_sorted_descending(self, ner_scores):
        a = load_selection_csv(TRANSFER / "selection_ner_gen.csv")
        b = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        rows = delta_table(ner_scores, a, b)
        deltas = [r.delta for r in rows]
        assert deltas == sorted(deltas, reverse=True)

    def test_top_bottom_helper(self, ner_scores):
        a = load_selection_csv(TRANSFER / "selection_ner_gen.csv")
        b = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        rows = delta_table(ner_scores, a, b)
        top, bottom = top_bottom(rows, 3)
        assert top == rows[:3]
        assert bottom == rows[-3:]

    def test_documented_reference_rows_have_expected_deltas(self, ner_scores):
        """The six reference rows carry exactly the documented gains."""
        a = load_selection_csv(TRANSFER / "selection_ner_gen.csv")
        b = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        rows = {r.target: r for r in delta_table(ner_scores, a, b)}
        expected = {
            "jpn_Jpan": 0.275, "kir_Cyrl": 0.173, "mya_Mymr": 0.153,
            "pes_Arab": -0.047, "tgl_Latn": -0.078, "sun_Latn": -0.087,
        }
        for code, delta in expected.items():
            row = rows[parse_language_code(code)]
            assert row.delta == pytest.approx(delta, abs=1e-3 + 1e-9)


class TestCsvSurfaces:
    def test_score_table_shape(self, ner_scores):
        assert len(ner_scores.targets) == 109
        assert ner_scores.sources == DEFAULT_SOURCES
        assert ner_scores.missing.any()

    def test_selection_roundtrip(self, tmp_path):
        sel = load_selection_csv(TRANSFER / "selection_ner_model.csv")
        out = tmp_path / "sel.csv"
        write_selection_csv(sel, out)
        again = load_selection_csv(out)
        assert again == sel

    def test_score_at(self, ner_scores):
        assert ner_scores.score_at(JPN, CMN) == pytest.approx(0.451)
        with pytest.raises(MissingScore):
            ner_scores.score_at(JPN, SPA)
