import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from langsim.corpus import parse_language_code
from langsim.hidden_io import HiddenStateSet

FIXTURES = Path(__file__).parent / "fixtures"

CODES = [parse_language_code(c) for c in ("deu_Latn", "eng_Latn", "fra_Latn", "jpn_Jpan")]


def random_hidden_set(rng, code, n_layers=2, n_sentences=3, hidden_dim=4, max_tokens=5):
    sentences = tuple(
        rng.standard_normal((n_layers, int(rng.integers(1, max_tokens + 1)), hidden_dim)).astype(
            np.float32
        )
        for _ in range(n_sentences)
    )
    return HiddenStateSet(code, n_layers, hidden_dim, sentences)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
