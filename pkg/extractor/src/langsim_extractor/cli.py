"""Command line for the hidden-state extractor."""

from __future__ import annotations

import argparse
import sys

from .extract import ExtractionConfig, ModelLoadError, TokenizationError, extract, verify_roundtrip


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langsim-extract",
        description="Dump per-layer hidden states of corpus sentences into HS1 files.",
    )
    parser.add_argument("--model", required=True, help="checkpoint path or identifier")
    parser.add_argument("--corpus", required=True, help="directory of <code>.txt files")
    parser.add_argument("--languages", required=True, help="comma-separated language codes")
    parser.add_argument("--out", required=True, help="output directory for .hs1 files")
    parser.add_argument("--device", default="cpu")
    parser.add_argument("--exclude-special-tokens", action="store_true",
                        help="drop [CLS]/[SEP]-style positions before storage")
    parser.add_argument("--max-seq-len", type=int, default=512)
    parser.add_argument("--verify-sample", type=int, default=None,
                        help="after writing, re-run this sentence index and compare")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = ExtractionConfig(
        model=args.model,
        corpus_dir=args.corpus,
        languages=args.languages.split(","),
        output_dir=args.out,
        device=args.device,
        include_special_tokens=not args.exclude_special_tokens,
        max_sequence_length=args.max_seq_len,
    )
    try:
        written = extract(config)
        for path in written:
            print(f"wrote {path}")
        if args.verify_sample is not None:
            report = verify_roundtrip(config, args.verify_sample)
            for language, diff in report.items():
                print(f"verify {language}[{args.verify_sample}]: max abs diff {diff:.2e}")
    except (ModelLoadError, TokenizationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
