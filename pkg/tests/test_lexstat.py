import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from langsim.corpus import MultiParallelCorpus, parse_language_code
from langsim.errors import DimensionMismatch
from langsim.lexstat import build_lex_matrix, levenshtein, normalized_edit_similarity
from oracles import levenshtein_full_table

CODES = [parse_language_code(c) for c in ("deu_Latn", "eng_Latn", "fra_Latn")]


class TestLevenshtein:
    def test_kitten_sitting(self):
        assert levenshtein_full_table("kitten", "sitting") == 3  # oracle first
        assert levenshtein("kitten", "sitting") == 3

    def test_identity(self):
        for s in ("", "a", "abc", "日本語"):
            assert levenshtein(s, s) == 0

    def test_pure_insertions(self):
        assert levenshtein("", "abc") == 3
        assert levenshtein("abc", "") == 3

    def test_code_point_unit(self):
        # each CJK character is one edit unit regardless of byte width
        assert levenshtein("日本", "日木") == 1
        assert levenshtein("a", "\U0001F600") == 1

    def test_case_sensitive(self):
        assert levenshtein("ABC", "abc") == 3

    @given(
        st.text(alphabet=st.characters(min_codepoint=97, max_codepoint=122), max_size=12),
        st.text(alphabet=st.characters(min_codepoint=97, max_codepoint=122), max_size=12),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_full_table_oracle(self, a, b):
        assert levenshtein(a, b) == levenshtein_full_table(a, b)

    def test_metric_axioms_small_alphabet(self):
        strings = [
            "".join(s)
            for n in range(0, 4)
            for s in itertools.product("ab", repeat=n)
        ]
        dists = {(a, b): levenshtein(a, b) for a in strings for b in strings}
        for a in strings:
            for b in strings:
                assert dists[a, b] == dists[b, a]
                assert (dists[a, b] == 0) == (a == b)
        for a in strings:
            for b in strings:
                for c in strings:
                    assert dists[a, c] <= dists[a, b] + dists[b, c]


class TestNormalizedSimilarity:
    def test_identical_nonempty(self):
        assert normalized_edit_similarity("abc", "abc") == 1.0

    def test_both_empty(self):
        assert normalized_edit_similarity("", "") == 1.0

    def test_kitten_sitting(self):
        assert normalized_edit_similarity("kitten", "sitting") == pytest.approx(1 - 3 / 7)

    @given(st.text(max_size=20), st.text(max_size=20))
    @settings(max_examples=300, deadline=None)
    def test_bounded(self, a, b):
        s = normalized_edit_similarity(a, b)
        assert 0.0 <= s <= 1.0


class TestLexMatrix:
    def corpus(self, rows):
        langs = CODES[: len(rows)]
        return MultiParallelCorpus(tuple(langs), tuple(tuple(r) for r in rows))

    def test_identical_lists(self):
        m = build_lex_matrix(self.corpus([["ab", "cd"], ["ab", "cd"]]))
        assert m.values[0, 1] == 1.0

    def test_forced_average(self):
        m = build_lex_matrix(self.corpus([["ab", "ab"], ["ab", "cd"]]))
        assert m.values[0, 1] == pytest.approx(0.5)

    def test_matches_naive_loop(self, rng):
        alphabet = "abcdef"
        rows = [
            ["".join(rng.choice(list(alphabet), size=rng.integers(1, 9))) for _ in range(5)]
            for _ in range(3)
        ]
        m = build_lex_matrix(self.corpus(rows))
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                expected = sum(
                    normalized_edit_similarity(x, y) for x, y in zip(rows[a], rows[b])
                ) / 5
                assert m.values[a, b] == pytest.approx(expected, abs=1e-12)

    def test_symmetric_exact_diag_one(self, rng):
        rows = [[f"w{rng.integers(100)}" for _ in range(4)] for _ in range(3)]
        m = build_lex_matrix(self.corpus(rows))
        assert np.abs(m.values - m.values.T).max() == 0.0
        assert np.array_equal(np.diag(m.values), np.ones(3))

    def test_needs_two_languages(self):
        with pytest.raises(DimensionMismatch):
            build_lex_matrix(self.corpus([["one", "two"]]))
