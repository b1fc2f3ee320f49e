"""HS1 binary files: per-sentence, per-layer token hidden states for one language.

Layout, all integers little-endian:

    magic             4 bytes  0x48 0x53 0x31 0x00 ("HS1\\0")
    version           u32      1
    language code     u8 length + UTF-8 bytes of the rendered code
    n_layers          u32
    hidden_dim        u32
    n_sentences       u32
    per sentence:     u32 n_tokens, then n_layers * n_tokens * hidden_dim
                      IEEE-754 float32, layer-major then token then dimension

Values are stored in 32-bit floats; downstream arithmetic runs in 64-bit.
Layer index 0 is the static embedding layer.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LanguageCode, parse_language_code
from .errors import (
    BadMagic,
    IoFailure,
    NonFiniteValue,
    Truncated,
    UnsupportedVersion,
    ZeroTokens,
)

MAGIC = b"HS1\x00"
VERSION = 1


@dataclass(frozen=True)
class HiddenStateSet:
    """One language's hidden states: per sentence an (n_layers, T, hidden_dim) float32 array."""

    language: LanguageCode
    n_layers: int
    hidden_dim: int
    sentences: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class Violation:
    """One broken invariant, addressed by sentence (and layer where known)."""

    rule: str
    sentence: int | None = None
    layer: int | None = None

    def __str__(self) -> str:
        at = []
        if self.sentence is not None:
            at.append(f"s={self.sentence}")
        if self.layer is not None:
            at.append(f"layer={self.layer}")
        return f"{self.rule}@{','.join(at)}" if at else self.rule


def validate(hs: HiddenStateSet) -> list[Violation]:
    """Report every invariant violation; empty list means the set is valid."""
    out: list[Violation] = []
    if hs.n_layers < 1:
        out.append(Violation("NonPositiveLayerCount"))
    if hs.hidden_dim < 1:
        out.append(Violation("NonPositiveHiddenDim"))
    for s, arr in enumerate(hs.sentences):
        if arr.ndim != 3 or arr.shape[0] != hs.n_layers or arr.shape[2] != hs.hidden_dim:
            out.append(Violation("ShapeMismatch", sentence=s))
            continue
        if arr.shape[1] < 1:
            out.append(Violation("ZeroTokens", sentence=s))
            continue
        finite = np.isfinite(arr)
        if not finite.all():
            bad_layers = np.nonzero(~finite.all(axis=(1, 2)))[0]
            for layer in bad_layers:
                out.append(Violation("NonFiniteValue", sentence=s, layer=int(layer)))
    return out


def write_hs1(hs: HiddenStateSet, path: str | Path) -> None:
    """Serialize a valid set; identical inputs produce identical bytes."""
    problems = validate(hs)
    if problems:
        raise (ZeroTokens if any(v.rule == "ZeroTokens" for v in problems) else NonFiniteValue)(
            "; ".join(str(v) for v in problems)
        )
    code = str(hs.language).encode("utf-8")
    parts = [
        MAGIC,
        struct.pack("<I", VERSION),
        struct.pack("<B", len(code)),
        code,
        struct.pack("<III", hs.n_layers, hs.hidden_dim, len(hs.sentences)),
    ]
    for arr in hs.sentences:
        parts.append(struct.pack("<I", arr.shape[1]))
        parts.append(np.ascontiguousarray(arr, dtype="<f4").tobytes())
    try:
        Path(path).write_bytes(b"".join(parts))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


class _Cursor:
    def __init__(self, data: bytes, name: str):
        self.data = data
        self.pos = 0
        self.name = name

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise Truncated(f"{self.name}: needed {n} bytes at offset {self.pos}, file ends at {len(self.data)}")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]


def read_hs1(path: str | Path) -> HiddenStateSet:
    """Read and fully validate an HS1 file; partial or padded files are rejected."""
    path = Path(path)
    cur = _Cursor(path.read_bytes(), path.name)
    if cur.take(4) != MAGIC:
        raise BadMagic(f"{path.name}: not an HS1 file")
    version = cur.u32()
    if version != VERSION:
        raise UnsupportedVersion(f"{path.name}: version {version}, expected {VERSION}")
    code = parse_language_code(cur.take(cur.u8()).decode("utf-8"))
    n_layers = cur.u32()
    hidden_dim = cur.u32()
    n_sentences = cur.u32()
    if n_layers < 1 or hidden_dim < 1:
        raise Truncated(f"{path.name}: non-positive layer count or hidden dim")
    sentences = []
    for s in range(n_sentences):
        n_tokens = cur.u32()
        if n_tokens < 1:
            raise ZeroTokens(f"{path.name}: sentence {s} has no tokens")
        raw = cur.take(4 * n_layers * n_tokens * hidden_dim)
        arr = np.frombuffer(raw, dtype="<f4").reshape(n_layers, n_tokens, hidden_dim)
        if not np.isfinite(arr).all():
            raise NonFiniteValue(f"{path.name}: sentence {s} carries NaN or Inf")
        sentences.append(arr)
    if cur.pos != len(cur.data):
        raise Truncated(f"{path.name}: {len(cur.data) - cur.pos} trailing bytes")
    return HiddenStateSet(code, n_layers, hidden_dim, tuple(sentences))
