"""Collapse token hidden states into one sentence embedding per layer."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import LanguageCode
from .errors import EmptyInput
from .hidden_io import HiddenStateSet


class PoolingStrategy(Enum):
    # MEAN suits bidirectional encoders; POSITION_WEIGHTED suits
    # auto-regressive encoders, where later tokens see more context.
    MEAN = "mean"
    POSITION_WEIGHTED = "position-weighted"


@dataclass(frozen=True)
class SentenceEmbeddings:
    """Pooled embeddings, shape (n_layers, n_sentences, hidden_dim), float64."""

    language: LanguageCode
    embeddings: np.ndarray

    @property
    def n_layers(self) -> int:
        return self.embeddings.shape[0]

    @property
    def n_sentences(self) -> int:
        return self.embeddings.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.embeddings.shape[2]


def mean_pool(tokens: np.ndarray) -> np.ndarray:
    """Plain average over token rows of a (T, D) matrix."""
    tokens = np.asarray(tokens, dtype=np.float64)
    if tokens.ndim != 2 or tokens.shape[0] == 0:
        raise EmptyInput("mean pooling needs at least one token row")
    return tokens.mean(axis=0)


def position_weights(n_tokens: int) -> np.ndarray:
    """Weights t / sum(1..T) for 1-indexed positions t; they sum to 1."""
    t = np.arange(1, n_tokens + 1, dtype=np.float64)
    return t / (n_tokens * (n_tokens + 1) / 2.0)


def position_weighted_pool(tokens: np.ndarray) -> np.ndarray:
    """Weighted average that gives later token positions linearly more weight."""
    tokens = np.asarray(tokens, dtype=np.float64)
    if tokens.ndim != 2 or tokens.shape[0] == 0:
        raise EmptyInput("position-weighted pooling needs at least one token row")
    return position_weights(tokens.shape[0]) @ tokens


_POOLERS = {
    PoolingStrategy.MEAN: mean_pool,
    PoolingStrategy.POSITION_WEIGHTED: position_weighted_pool,
}


def pool_set(hs: HiddenStateSet, strategy: PoolingStrategy) -> SentenceEmbeddings:
    """Pool every sentence of every layer independently.

    Output shape is (n_layers, n_sentences, hidden_dim); sentence order is
    preserved.
    """
    pooler = _POOLERS[strategy]
    out = np.empty((hs.n_layers, len(hs.sentences), hs.hidden_dim), dtype=np.float64)
    for s, arr in enumerate(hs.sentences):
        if arr.shape[1] == 0:
            raise EmptyInput(f"sentence {s} has no token rows")
        for layer in range(hs.n_layers):
            out[layer, s] = pooler(arr[layer])
    return SentenceEmbeddings(hs.language, out)
