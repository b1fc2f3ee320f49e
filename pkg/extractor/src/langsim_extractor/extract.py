"""Run a multilingual checkpoint over corpora and dump HS1 hidden-state files.

For every sentence the forward pass captures all hidden states: the embedding
layer output plus each transformer layer, so an emitted file carries
N = layer count + 1 layer stacks. Encoder-decoder checkpoints contribute only
their encoder. Padding positions are always dropped; special tokens are kept
by default and dropped when ``include_special_tokens`` is false.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import hs1


class ModelLoadError(Exception):
    pass


class TokenizationError(Exception):
    pass


class MismatchError(Exception):
    pass


class TruncationWarning(UserWarning):
    """A sentence exceeded max_sequence_length and was cut."""


@dataclass
class ExtractionConfig:
    model: str
    corpus_dir: str
    languages: list[str]
    output_dir: str
    device: str = "cpu"
    include_special_tokens: bool = True
    max_sequence_length: int = 512

    def __post_init__(self) -> None:
        if self.max_sequence_length < 2:
            raise ValueError("max_sequence_length must be at least 2")
        if not self.languages:
            raise ValueError("no languages requested")


@dataclass
class _Runner:
    """Loaded model/tokenizer pair bound to a device."""

    model: object
    tokenizer: object
    encoder: object
    n_layers_advertised: int
    device: str


def _load(config: ExtractionConfig) -> _Runner:
    try:
        import torch
        from transformers import AutoModel, AutoTokenizer
    except ImportError as exc:
        raise ModelLoadError(f"torch/transformers unavailable: {exc}") from exc
    try:
        tokenizer = AutoTokenizer.from_pretrained(config.model)
        model = AutoModel.from_pretrained(config.model)
    except Exception as exc:
        raise ModelLoadError(f"cannot load {config.model}: {exc}") from exc
    model.eval()
    model.to(config.device)
    encoder = model.get_encoder() if getattr(model.config, "is_encoder_decoder", False) else model
    n_layers = getattr(model.config, "num_hidden_layers", None)
    if n_layers is None:
        n_layers = getattr(model.config, "num_layers", None)
    if n_layers is None:
        raise ModelLoadError(f"{config.model}: config does not advertise a layer count")
    return _Runner(model, tokenizer, encoder, int(n_layers), config.device)


def _read_sentences(corpus_dir: str | Path, language: str) -> list[str]:
    path = Path(corpus_dir) / f"{language}.txt"
    if not path.exists():
        raise FileNotFoundError(f"no corpus file {path}")
    sentences = []
    for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
        if not line.strip():
            raise TokenizationError(f"{path.name}: empty sentence at line {i + 1}")
        sentences.append(line)
    if not sentences:
        raise TokenizationError(f"{path.name}: empty corpus file")
    return sentences


def sentence_states(runner: _Runner, text: str, include_special_tokens: bool,
                    max_sequence_length: int) -> np.ndarray:
    """Hidden states for one sentence: float32 array (n_layers+1, T, D)."""
    import torch

    full = runner.tokenizer(text, truncation=False)["input_ids"]
    if len(full) > max_sequence_length:
        warnings.warn(
            TruncationWarning(f"sentence cut from {len(full)} to {max_sequence_length} tokens"),
            stacklevel=2,
        )
    enc = runner.tokenizer(
        text,
        truncation=True,
        max_length=max_sequence_length,
        return_special_tokens_mask=True,
        return_tensors="pt",
    )
    keep = enc["attention_mask"][0].bool()
    if not include_special_tokens:
        keep &= enc["special_tokens_mask"][0] == 0
    if int(keep.sum()) == 0:
        raise TokenizationError(f"sentence reduced to zero tokens: {text!r}")
    inputs = {
        "input_ids": enc["input_ids"].to(runner.device),
        "attention_mask": enc["attention_mask"].to(runner.device),
    }
    with torch.no_grad():
        out = runner.encoder(**inputs, output_hidden_states=True)
    stack = torch.stack(out.hidden_states, dim=0)[:, 0]  # (N, T_padded, D)
    kept = stack[:, keep.to(runner.device)]
    return kept.cpu().numpy().astype(np.float32, copy=False)


def extract(config: ExtractionConfig) -> list[Path]:
    """One HS1 file per requested language; returns the written paths."""
    runner = _load(config)
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for language in config.languages:
        sentences = _read_sentences(config.corpus_dir, language)
        arrays = [
            sentence_states(
                runner, text, config.include_special_tokens, config.max_sequence_length
            )
            for text in sentences
        ]
        expected_n = runner.n_layers_advertised + 1
        for arr in arrays:
            if arr.shape[0] != expected_n:
                raise ModelLoadError(
                    f"{config.model}: produced {arr.shape[0]} layer stacks, "
                    f"expected layer count + 1 = {expected_n}"
                )
        path = out_dir / f"{language}.hs1"
        hs1.write(path, language, arrays)
        written.append(path)
    return written


def verify_roundtrip(config: ExtractionConfig, sample: int) -> dict[str, float]:
    """Re-run the forward pass for one sentence index per language and compare.

    Returns the max abs difference per language; raises MismatchError when any
    exceeds the float32 storage tolerance of 1e-5.
    """
    runner = _load(config)
    report = {}
    for language in config.languages:
        path = Path(config.output_dir) / f"{language}.hs1"
        stored_language, stored = hs1.read(path)
        if stored_language != language:
            raise MismatchError(f"{path.name}: carries code {stored_language}")
        if not 0 <= sample < len(stored):
            raise MismatchError(f"{path.name}: no sentence index {sample}")
        text = _read_sentences(config.corpus_dir, language)[sample]
        fresh = sentence_states(
            runner, text, config.include_special_tokens, config.max_sequence_length
        )
        if fresh.shape != stored[sample].shape:
            raise MismatchError(
                f"{language}[{sample}]: shape {stored[sample].shape} vs fresh {fresh.shape}"
            )
        diff = float(np.max(np.abs(fresh.astype(np.float64) - stored[sample].astype(np.float64))))
        if diff > 1e-5:
            raise MismatchError(f"{language}[{sample}]: max abs diff {diff:.3e} > 1e-5")
        report[language] = diff
    return report
