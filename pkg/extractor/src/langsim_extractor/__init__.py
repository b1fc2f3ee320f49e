from .extract import (
    ExtractionConfig,
    MismatchError,
    ModelLoadError,
    TokenizationError,
    TruncationWarning,
    extract,
    verify_roundtrip,
)

__version__ = "0.1.0"
