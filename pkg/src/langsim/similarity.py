"""Per-layer language-by-language cosine similarity matrices.

Parallel mode averages the cosine of each aligned sentence pair across the
corpus. Monolingual mode compares per-language centroids instead, so sentence
counts may differ across languages; centroid cosine is this toolkit's
interpretation of similarity over non-parallel text and is labeled as such in
emitted metadata.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .corpus import LanguageCode
from .errors import DimensionMismatch, LayerOutOfRange, UnknownLanguage, ZeroVector
from .matrixcsv import write_matrix_csv
from .parallel import run_tasks
from .pooling import SentenceEmbeddings


class SimilarityMode(Enum):
    PARALLEL = "parallel"
    MONOLINGUAL_CENTROID = "monolingual-centroid"


@dataclass(frozen=True)
class LayerSimilaritySet:
    """One symmetric L x L similarity matrix per selected layer.

    ``layer_indices[i]`` names the model layer behind ``matrices[i]``;
    index 0 is the static embedding layer.
    """

    languages: tuple[LanguageCode, ...]
    matrices: np.ndarray
    mode: SimilarityMode
    n_sentences: int | None
    layer_indices: tuple[int, ...]

    @property
    def n_layers(self) -> int:
        return self.matrices.shape[0]

    def layer(self, index: int) -> np.ndarray:
        """Matrix for a model layer index (not a position in the stack)."""
        try:
            pos = self.layer_indices.index(index)
        except ValueError:
            raise LayerOutOfRange(f"layer {index} not in {self.layer_indices}") from None
        return self.matrices[pos]


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two vectors; zero-norm input is an error."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector("cosine of a zero vector")
    return float(u @ v) / (nu * nv)


def _resolve_layers(n_layers: int, layers: list[int] | None) -> tuple[int, ...]:
    if layers is None:
        return tuple(range(n_layers))
    for i in layers:
        if not 0 <= i < n_layers:
            raise LayerOutOfRange(f"layer {i} outside 0..{n_layers - 1}")
    return tuple(layers)


def _check_unique_languages(sets: list[SentenceEmbeddings]) -> None:
    codes = [e.language for e in sets]
    if len(set(codes)) != len(codes):
        raise DimensionMismatch("duplicate languages in embedding sets")


def build_parallel_similarity(
    sets: list[SentenceEmbeddings], layers: list[int] | None = None
) -> LayerSimilaritySet:
    """Average per-sentence cosine similarity for every language pair and layer.

    All sets must share layer count, sentence count, and hidden dim. Each
    unordered pair is computed once and mirrored, so the result is symmetric
    exactly; the diagonal is 1 by definition.
    """
    if len(sets) < 2:
        raise DimensionMismatch("need at least two languages")
    _check_unique_languages(sets)
    first = sets[0]
    for e in sets[1:]:
        if e.embeddings.shape != first.embeddings.shape:
            raise DimensionMismatch(
                f"{e.language}: shape {e.embeddings.shape} != {first.embeddings.shape}"
            )
    if first.n_sentences < 1:
        raise DimensionMismatch("need at least one sentence")
    picked = _resolve_layers(first.n_layers, layers)

    # Normalize once: unit[l] has shape (len(picked), S, D).
    units = []
    for e in sets:
        emb = e.embeddings[list(picked)]
        norms = np.linalg.norm(emb, axis=2)
        zero = np.nonzero(norms == 0.0)
        if zero[0].size:
            li, si = int(zero[0][0]), int(zero[1][0])
            raise ZeroVector(
                f"{e.language}: zero embedding at layer {picked[li]}, sentence {si}"
            )
        units.append(emb / norms[:, :, None])

    L = len(sets)
    matrices = np.ones((len(picked), L, L), dtype=np.float64)

    def one_pair(pair: tuple[int, int]) -> None:
        a, b = pair
        # per-layer mean over sentences of the per-sentence cosines
        cos = np.einsum("lsd,lsd->ls", units[a], units[b])
        mean = cos.mean(axis=1)
        matrices[:, a, b] = mean
        matrices[:, b, a] = mean

    run_tasks(one_pair, itertools.combinations(range(L), 2))
    return LayerSimilaritySet(
        languages=tuple(e.language for e in sets),
        matrices=matrices,
        mode=SimilarityMode.PARALLEL,
        n_sentences=first.n_sentences,
        layer_indices=picked,
    )


def build_monolingual_similarity(
    sets: list[SentenceEmbeddings], layers: list[int] | None = None
) -> LayerSimilaritySet:
    """Cosine between per-language centroid embeddings, layer by layer.

    Sentence counts may differ across languages; only layer count and hidden
    dim must agree.
    """
    if len(sets) < 2:
        raise DimensionMismatch("need at least two languages")
    _check_unique_languages(sets)
    first = sets[0]
    for e in sets[1:]:
        if e.n_layers != first.n_layers or e.hidden_dim != first.hidden_dim:
            raise DimensionMismatch(
                f"{e.language}: layers/dim {e.n_layers}/{e.hidden_dim} "
                f"!= {first.n_layers}/{first.hidden_dim}"
            )
    picked = _resolve_layers(first.n_layers, layers)

    centroids = []
    for e in sets:
        cent = e.embeddings[list(picked)].mean(axis=1)  # (len(picked), D)
        norms = np.linalg.norm(cent, axis=1)
        if (norms == 0.0).any():
            layer = picked[int(np.nonzero(norms == 0.0)[0][0])]
            raise ZeroVector(f"{e.language}: zero centroid at layer {layer}")
        centroids.append(cent / norms[:, None])

    L = len(sets)
    matrices = np.ones((len(picked), L, L), dtype=np.float64)
    for a, b in itertools.combinations(range(L), 2):
        cos = np.einsum("ld,ld->l", centroids[a], centroids[b])
        matrices[:, a, b] = cos
        matrices[:, b, a] = cos
    return LayerSimilaritySet(
        languages=tuple(e.language for e in sets),
        matrices=matrices,
        mode=SimilarityMode.MONOLINGUAL_CENTROID,
        n_sentences=None,
        layer_indices=picked,
    )


def similarity_vector(
    sims: LayerSimilaritySet, layer: int, target: LanguageCode
) -> list[tuple[LanguageCode, float]]:
    """The target's similarity to every other language, in language-list order."""
    matrix = sims.layer(layer)
    if target not in sims.languages:
        raise UnknownLanguage(f"{target} not in similarity set")
    t = sims.languages.index(target)
    return [
        (code, float(matrix[t, j]))
        for j, code in enumerate(sims.languages)
        if j != t
    ]


def write_layer_csvs(sims: LayerSimilaritySet, out_dir: str | Path) -> list[Path]:
    """One CSV per layer, named layer_<index padded to 2>.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for pos, layer in enumerate(sims.layer_indices):
        path = out_dir / f"layer_{layer:02d}.csv"
        write_matrix_csv(path, sims.languages, sims.matrices[pos])
        paths.append(path)
    return paths
