"""Exception types shared across the toolkit.

Two broad families matter to the CLI: usage errors (bad arguments, missing
paths) exit with code 2, data errors (violated invariants inside otherwise
readable inputs) exit with code 3.
"""


class LangsimError(Exception):
    """Base class for all toolkit errors."""


# language codes and corpora

class MalformedCode(LangsimError):
    """A language code does not match ``xxx_Xxxx``."""


class AlignmentMismatch(LangsimError):
    """Parallel corpus files disagree on sentence count."""


class EmptySentence(LangsimError):
    """A corpus line is empty after trimming."""


class OutOfRange(LangsimError):
    """A count or index falls outside its valid range."""


# hidden-state files

class BadMagic(LangsimError):
    """File does not start with the HS1 magic bytes."""


class UnsupportedVersion(LangsimError):
    """HS1 file declares a version this reader does not support."""


class Truncated(LangsimError):
    """HS1 file ends early or carries trailing bytes."""


class NonFiniteValue(LangsimError):
    """A hidden-state value is NaN or infinite."""


class ZeroTokens(LangsimError):
    """A sentence carries no token rows."""


class IoFailure(LangsimError):
    """Underlying write failed."""


# pooling and similarity

class EmptyInput(LangsimError):
    """Pooling was asked to collapse zero token rows."""


class ZeroVector(LangsimError):
    """Cosine of a zero-norm vector; signals a degenerate embedding."""


class DimensionMismatch(LangsimError):
    """Embedding sets disagree on layer count, sentence count, or width."""


class UnknownLanguage(LangsimError):
    """A language code is absent from the structure being queried."""


class LayerOutOfRange(LangsimError):
    """A layer index exceeds the available layer count."""


# measure tables

class ParseError(LangsimError):
    """A CSV table is structurally invalid."""


class AsymmetryError(LangsimError):
    """Mirrored cells of a measure table disagree."""


class UnknownCodeError(LangsimError):
    """A measure table header carries an invalid language code."""


# correlation

class LengthMismatch(LangsimError):
    """Paired vectors differ in length."""


class ConstantInput(LangsimError):
    """A correlation input has zero variance."""


class TooFew(LangsimError):
    """Fewer than two usable data points."""


# clustering

class MalformedMatrix(LangsimError):
    """Similarity matrix is not symmetric with unit diagonal."""


# transfer

class EmptySources(LangsimError):
    """Source-selection was given no candidate sources."""


class MissingScore(LangsimError):
    """The selected (target, source) cell has no score."""


class UnknownTarget(LangsimError):
    """A selection references a target absent from the score table."""
