"""Language codes and line-aligned corpora.

A language is identified by a 3-letter ISO 639-3 code plus a 4-letter script
code, rendered ``eng_Latn``. A multi-parallel corpus is a directory of
``<code>.txt`` files with one sentence per line, where line k of every file
translates the same content.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AlignmentMismatch, EmptySentence, MalformedCode, OutOfRange

_CODE_RE = re.compile(r"^[a-z]{3}_[A-Z][a-z]{3}$")


@dataclass(frozen=True, order=True)
class LanguageCode:
    """Validated ``<iso>_<Script>`` language identifier.

    Ordering and equality are byte-lexicographic on the rendered form, which
    the field order below (iso, then script) reproduces.
    """

    iso: str
    script: str

    def __post_init__(self) -> None:
        if not _CODE_RE.match(f"{self.iso}_{self.script}"):
            raise MalformedCode(f"not a valid language code: {self.iso}_{self.script!r}")

    def __str__(self) -> str:
        return f"{self.iso}_{self.script}"


def parse_language_code(text: str) -> LanguageCode:
    """Parse a rendered code such as ``eng_Latn``.

    Case is significant: the ISO part must be lowercase and the script part
    titlecase. Nothing is normalized silently.
    """
    if not _CODE_RE.match(text):
        raise MalformedCode(f"not a valid language code: {text!r}")
    iso, script = text.split("_")
    return LanguageCode(iso, script)


def _read_lines(path: Path) -> list[str]:
    # Trailing CR/LF only; interior whitespace feeds edit distance and must
    # survive. A line that is pure whitespace counts as empty.
    raw = path.read_text(encoding="utf-8")
    lines = raw.splitlines()
    out = []
    for i, line in enumerate(lines):
        if not line.strip():
            raise EmptySentence(f"{path.name}: empty sentence at line {i + 1}")
        out.append(line)
    return out


@dataclass(frozen=True)
class MultiParallelCorpus:
    """Index-aligned sentences across languages.

    ``sentences[l][k]`` is sentence k of language ``languages[l]``; all
    per-language lists share one length S.
    """

    languages: tuple[LanguageCode, ...]
    sentences: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if not self.languages:
            raise AlignmentMismatch("corpus has no languages")
        if len(set(self.languages)) != len(self.languages):
            raise AlignmentMismatch("duplicate language codes")
        if len(self.sentences) != len(self.languages):
            raise AlignmentMismatch("one sentence list required per language")
        lengths = {len(s) for s in self.sentences}
        if len(lengths) != 1:
            raise AlignmentMismatch(f"sentence counts differ: {sorted(lengths)}")
        if self.n_sentences < 1:
            raise AlignmentMismatch("corpus has no sentences")

    @property
    def n_sentences(self) -> int:
        return len(self.sentences[0])

    def language_sentences(self, code: LanguageCode) -> tuple[str, ...]:
        return self.sentences[self.languages.index(code)]


@dataclass(frozen=True)
class MonolingualCorpus:
    """Sentences of one language; counts may differ across languages."""

    language: LanguageCode
    sentences: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.sentences:
            raise EmptySentence(f"{self.language}: no sentences")


def load_parallel_corpus(root: str | Path, max_sentences: int | None = None) -> MultiParallelCorpus:
    """Load every ``<code>.txt`` under ``root`` into an aligned corpus.

    Languages come out sorted by rendered code. All files must agree on line
    count before any capping; with ``max_sentences`` given, the first
    ``max_sentences`` lines of every language are kept.
    """
    root = Path(root)
    files = sorted(root.glob("*.txt"))
    if not files:
        raise AlignmentMismatch(f"no *.txt corpus files under {root}")
    languages = []
    per_language = []
    for path in files:
        code = parse_language_code(path.stem)
        languages.append(code)
        per_language.append(_read_lines(path))
    counts = {len(lines) for lines in per_language}
    if len(counts) != 1:
        detail = ", ".join(f"{lang}={len(lines)}" for lang, lines in zip(languages, per_language))
        raise AlignmentMismatch(f"line counts differ: {detail}")
    if max_sentences is not None:
        total = counts.pop()
        if not 1 <= max_sentences <= total:
            raise OutOfRange(f"max_sentences={max_sentences} outside 1..{total}")
        per_language = [lines[:max_sentences] for lines in per_language]
    return MultiParallelCorpus(tuple(languages), tuple(tuple(lines) for lines in per_language))


def load_monolingual_corpus(path: str | Path) -> MonolingualCorpus:
    """Load one ``<code>.txt`` file as a monolingual corpus."""
    path = Path(path)
    code = parse_language_code(path.stem)
    return MonolingualCorpus(code, tuple(_read_lines(path)))


def subset_sentences(corpus: MultiParallelCorpus, k: int) -> MultiParallelCorpus:
    """Keep the first k sentence indices of every language."""
    if not 1 <= k <= corpus.n_sentences:
        raise OutOfRange(f"k={k} outside 1..{corpus.n_sentences}")
    return MultiParallelCorpus(corpus.languages, tuple(s[:k] for s in corpus.sentences))
