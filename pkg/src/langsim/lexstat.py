"""Lexical similarity over parallel text via edit distance.

Edit operations work on Unicode code points: no case folding, no punctuation
stripping, no transliteration. Similarity of a sentence pair is
1 - distance / max(length); a corpus pair averages that over all aligned
sentences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .corpus import LanguageCode, MultiParallelCorpus
from .errors import DimensionMismatch
from .parallel import run_tasks


@dataclass(frozen=True)
class LexMatrix:
    languages: tuple[LanguageCode, ...]
    values: np.ndarray


def levenshtein(a: str, b: str) -> int:
    """Minimal number of single code-point insertions, deletions, substitutions."""
    if a == b:
        return 0
    # roll over the shorter string to keep the buffer small
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    cur = [0] * (len(b) + 1)
    for i, ca in enumerate(a, start=1):
        cur[0] = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev, cur = cur, prev
    return prev[len(b)]


def normalized_edit_similarity(a: str, b: str) -> float:
    """1 - distance / max length, in [0, 1]; two empty strings count as identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def build_lex_matrix(corpus: MultiParallelCorpus) -> LexMatrix:
    """Average normalized edit similarity per language pair; diagonal is 1."""
    L = len(corpus.languages)
    if L < 2:
        raise DimensionMismatch("need at least two languages")
    values = np.ones((L, L), dtype=np.float64)

    def one_pair(pair: tuple[int, int]) -> None:
        a, b = pair
        sims = [
            normalized_edit_similarity(sa, sb)
            for sa, sb in zip(corpus.sentences[a], corpus.sentences[b])
        ]
        mean = sum(sims) / len(sims)
        values[a, b] = mean
        values[b, a] = mean

    run_tasks(one_pair, itertools.combinations(range(L), 2))
    return LexMatrix(corpus.languages, values)
