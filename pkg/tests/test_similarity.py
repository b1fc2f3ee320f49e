import math

import numpy as np
import pytest

from conftest import CODES
from langsim.corpus import parse_language_code
from langsim.errors import DimensionMismatch, LayerOutOfRange, UnknownLanguage, ZeroVector
from langsim.matrixcsv import read_matrix_csv
from langsim.pooling import SentenceEmbeddings
from langsim.similarity import (
    LayerSimilaritySet,
    build_monolingual_similarity,
    build_parallel_similarity,
    cosine,
    similarity_vector,
    write_layer_csvs,
)
from oracles import cosine_naive, parallel_similarity_naive


def embeddings(code, array):
    return SentenceEmbeddings(code, np.asarray(array, dtype=np.float64))


def random_sets(rng, n_langs, n_layers, n_sentences, dim):
    return [
        embeddings(CODES[i], rng.standard_normal((n_layers, n_sentences, dim)))
        for i in range(n_langs)
    ]


class TestCosine:
    def test_identical(self):
        assert cosine([3.0, 4.0], [3.0, 4.0]) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert cosine([1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_antipodal(self):
        assert cosine([1.0, 0.0], [-1.0, 0.0]) == pytest.approx(-1.0)

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            cosine([0.0, 0.0], [1.0, 0.0])

    def test_matches_naive(self, rng):
        for _ in range(50):
            u = rng.standard_normal(6)
            v = rng.standard_normal(6)
            assert cosine(u, v) == pytest.approx(cosine_naive(u, v), abs=1e-12)


class TestParallelBuild:
    def test_identical_sets_give_ones(self, rng):
        base = rng.standard_normal((2, 3, 4))
        sets = [embeddings(CODES[0], base), embeddings(CODES[1], base.copy())]
        sims = build_parallel_similarity(sets)
        assert np.allclose(sims.matrices, 1.0)

    def test_known_sentence_cosines_average(self):
        # sentence 1 cosine 0.8, sentence 2 cosine 0.6 at layer 0
        a = [[[1.0, 0.0], [1.0, 0.0]]]
        b = [[[0.8, math.sqrt(1 - 0.64)], [0.6, math.sqrt(1 - 0.36)]]]
        sims = build_parallel_similarity([embeddings(CODES[0], a), embeddings(CODES[1], b)])
        assert sims.matrices[0, 0, 1] == pytest.approx(0.7, abs=1e-12)

    def test_planted_clusters_order(self, rng):
        # two near-duplicates plus one orthogonal language
        base = rng.standard_normal((1, 4, 8))
        near = base + 0.01 * rng.standard_normal(base.shape)
        ortho = np.zeros_like(base)
        ortho[..., -1] = 1.0
        sets = [
            embeddings(CODES[0], base),
            embeddings(CODES[1], near),
            embeddings(CODES[2], ortho),
        ]
        sims = build_parallel_similarity(sets)
        expected = parallel_similarity_naive(sets)
        assert np.allclose(sims.matrices, expected, atol=1e-12)
        assert sims.matrices[0, 0, 1] > sims.matrices[0, 0, 2]
        assert sims.matrices[0, 0, 1] > sims.matrices[0, 1, 2]

    def test_oracle_equivalence_random(self, rng):
        for _ in range(10):
            sets = random_sets(rng, 4, 3, 5, 4)
            sims = build_parallel_similarity(sets)
            assert np.allclose(sims.matrices, parallel_similarity_naive(sets), atol=1e-12)

    def test_symmetry_exact_and_diagonal(self, rng):
        sims = build_parallel_similarity(random_sets(rng, 4, 2, 6, 5))
        assert np.abs(sims.matrices - sims.matrices.transpose(0, 2, 1)).max() == 0.0
        for pos in range(sims.n_layers):
            assert np.abs(np.diag(sims.matrices[pos]) - 1.0).max() <= 1e-9

    def test_scale_invariance(self, rng):
        sets = random_sets(rng, 3, 2, 4, 5)
        sims = build_parallel_similarity(sets)
        scaled = list(sets)
        scaled[1] = embeddings(sets[1].language, sets[1].embeddings * 37.5)
        sims2 = build_parallel_similarity(scaled)
        assert np.allclose(sims.matrices, sims2.matrices, atol=1e-9)

    def test_subset_consistency(self, rng):
        sets = random_sets(rng, 3, 2, 8, 4)
        k = 3
        subs = [embeddings(e.language, e.embeddings[:, :k]) for e in sets]
        sims_k = build_parallel_similarity(subs)
        # manual mean over the first k per-sentence cosines
        manual = parallel_similarity_naive(subs)
        assert np.allclose(sims_k.matrices, manual, atol=1e-12)

    def test_zero_embedding_flags_location(self, rng):
        sets = random_sets(rng, 2, 2, 3, 4)
        broken = sets[1].embeddings.copy()
        broken[1, 2] = 0.0
        sets[1] = embeddings(sets[1].language, broken)
        with pytest.raises(ZeroVector, match="layer 1, sentence 2"):
            build_parallel_similarity(sets)

    def test_shape_mismatch(self, rng):
        sets = [
            embeddings(CODES[0], rng.standard_normal((2, 3, 4))),
            embeddings(CODES[1], rng.standard_normal((2, 4, 4))),
        ]
        with pytest.raises(DimensionMismatch):
            build_parallel_similarity(sets)

    def test_layer_selection(self, rng):
        sets = random_sets(rng, 2, 4, 3, 4)
        sims = build_parallel_similarity(sets, layers=[2])
        assert sims.layer_indices == (2,)
        full = build_parallel_similarity(sets)
        assert np.allclose(sims.layer(2), full.layer(2))
        with pytest.raises(LayerOutOfRange):
            build_parallel_similarity(sets, layers=[4])


class TestMonolingualBuild:
    def test_identical_centroids(self):
        v = [1.0, 1.0, 0.0]
        a = embeddings(CODES[0], [[v, v, v]])
        b = embeddings(CODES[1], [[v, v]])  # different sentence count is fine
        sims = build_monolingual_similarity([a, b])
        assert sims.matrices[0, 0, 1] == pytest.approx(1.0)

    def test_orthogonal_centroids(self):
        a = embeddings(CODES[0], [[[1.0, 0.0]]])
        b = embeddings(CODES[1], [[[0.0, 1.0]]])
        assert build_monolingual_similarity([a, b]).matrices[0, 0, 1] == 0.0

    def test_matches_hand_computed_centroid_cosine(self, rng):
        a = embeddings(CODES[0], rng.standard_normal((2, 5, 4)))
        b = embeddings(CODES[1], rng.standard_normal((2, 3, 4)))
        sims = build_monolingual_similarity([a, b])
        for layer in range(2):
            ca = a.embeddings[layer].mean(axis=0)
            cb = b.embeddings[layer].mean(axis=0)
            assert sims.matrices[layer, 0, 1] == pytest.approx(
                cosine_naive(ca, cb), abs=1e-12
            )

    def test_zero_centroid_rejected(self):
        a = embeddings(CODES[0], [[[1.0, 0.0], [-1.0, 0.0]]])
        b = embeddings(CODES[1], [[[1.0, 0.0]]])
        with pytest.raises(ZeroVector):
            build_monolingual_similarity([a, b])


class TestSimilarityVector:
    def make(self, rng):
        return build_parallel_similarity(random_sets(rng, 3, 2, 4, 3))

    def test_order_and_exclusion(self, rng):
        sims = self.make(rng)
        target = sims.languages[1]
        pairs = similarity_vector(sims, 0, target)
        assert [c for c, _ in pairs] == [sims.languages[0], sims.languages[2]]

    def test_all_identical(self, rng):
        base = rng.standard_normal((1, 2, 3))
        sets = [embeddings(CODES[i], base.copy()) for i in range(3)]
        sims = build_parallel_similarity(sets)
        pairs = similarity_vector(sims, 0, CODES[0])
        assert all(v == pytest.approx(1.0) for _, v in pairs)

    def test_unknown_language(self, rng):
        with pytest.raises(UnknownLanguage):
            similarity_vector(self.make(rng), 0, parse_language_code("zul_Latn"))

    def test_layer_out_of_range(self, rng):
        with pytest.raises(LayerOutOfRange):
            similarity_vector(self.make(rng), 5, CODES[0])


def test_csv_export_roundtrip(tmp_path, rng):
    sims = build_parallel_similarity(random_sets(rng, 3, 2, 4, 3))
    paths = write_layer_csvs(sims, tmp_path)
    assert [p.name for p in paths] == ["layer_00.csv", "layer_01.csv"]
    langs, values, missing = read_matrix_csv(paths[1])
    assert tuple(langs) == sims.languages
    assert not missing.any()
    assert np.allclose(values, sims.matrices[1], atol=5e-7)  # 6-decimal export
