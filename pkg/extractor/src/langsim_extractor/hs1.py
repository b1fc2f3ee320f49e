"""Standalone HS1 writer/reader.

This mirrors the published byte layout rather than importing the consumer's
implementation, so the format stays an actual contract between the two
packages. Layout, little-endian: magic "HS1\\0", u32 version (=1), u8 length +
UTF-8 rendered language code, u32 n_layers, u32 hidden_dim, u32 n_sentences,
then per sentence u32 n_tokens followed by n_layers*n_tokens*hidden_dim
float32 values, layer-major.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"HS1\x00"
VERSION = 1


class FormatError(Exception):
    pass


def write(path: str | Path, language: str, sentences: list[np.ndarray]) -> None:
    """Write per-sentence (n_layers, T, hidden_dim) float32 arrays."""
    if not sentences:
        raise FormatError("no sentences to write")
    n_layers, _, hidden_dim = sentences[0].shape
    parts = [
        MAGIC,
        struct.pack("<I", VERSION),
        struct.pack("<B", len(language.encode("utf-8"))),
        language.encode("utf-8"),
        struct.pack("<III", n_layers, hidden_dim, len(sentences)),
    ]
    for arr in sentences:
        if arr.shape[0] != n_layers or arr.shape[2] != hidden_dim:
            raise FormatError(f"inconsistent sentence shape {arr.shape}")
        if arr.shape[1] < 1:
            raise FormatError("sentence with zero tokens")
        if not np.isfinite(arr).all():
            raise FormatError("non-finite hidden state")
        parts.append(struct.pack("<I", arr.shape[1]))
        parts.append(np.ascontiguousarray(arr, dtype="<f4").tobytes())
    Path(path).write_bytes(b"".join(parts))


def read(path: str | Path) -> tuple[str, list[np.ndarray]]:
    """Read back (language, per-sentence arrays); strict about structure."""
    data = Path(path).read_bytes()
    pos = 0

    def take(n):
        nonlocal pos
        if pos + n > len(data):
            raise FormatError(f"file ends at {len(data)}, wanted {pos + n}")
        chunk = data[pos : pos + n]
        pos += n
        return chunk

    if take(4) != MAGIC:
        raise FormatError("bad magic")
    if struct.unpack("<I", take(4))[0] != VERSION:
        raise FormatError("unsupported version")
    code_len = take(1)[0]
    language = take(code_len).decode("utf-8")
    n_layers, hidden_dim, n_sentences = struct.unpack("<III", take(12))
    sentences = []
    for _ in range(n_sentences):
        n_tokens = struct.unpack("<I", take(4))[0]
        raw = take(4 * n_layers * n_tokens * hidden_dim)
        sentences.append(
            np.frombuffer(raw, dtype="<f4").reshape(n_layers, n_tokens, hidden_dim)
        )
    if pos != len(data):
        raise FormatError("trailing bytes")
    return language, sentences
