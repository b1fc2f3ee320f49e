"""Command-line entry point.

Subcommands: sim (similarity matrices from HS1 hidden-state files), corr
(correlation reports against measure tables), cluster (dendrograms from a
similarity CSV), transfer (source selection and score aggregation).

Exit codes: 0 success, 2 usage or input error, 3 data-invariant violation
inside an otherwise readable input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, clustering, lexstat, measures, similarity, svg, transfer
from .corpus import load_parallel_corpus, parse_language_code
from .errors import (
    LangsimError,
    LayerOutOfRange,
    MalformedCode,
    OutOfRange,
    UnknownLanguage,
)
from .hidden_io import read_hs1
from .matrixcsv import read_matrix_csv
from .measures import MeasureKind
from .pooling import PoolingStrategy, pool_set

USAGE_ERRORS = (OutOfRange, LayerOutOfRange, UnknownLanguage, MalformedCode, FileNotFoundError)


def _gather_hs1(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(p.glob("*.hs1")))
        elif p.exists():
            files.append(p)
        else:
            raise FileNotFoundError(f"no such input: {p}")
    if len(files) < 2:
        raise FileNotFoundError(f"need at least two HS1 files, found {len(files)}")
    return files


def _parse_layers(spec: str, n_layers: int) -> list[int] | None:
    if spec == "all":
        return None
    idx = int(spec)
    if not 0 <= idx < n_layers:
        raise LayerOutOfRange(f"layer {idx} outside 0..{n_layers - 1}")
    return [idx]


def _load_embeddings(args) -> list:
    strategy = PoolingStrategy(args.pooling)
    sets = []
    for path in _gather_hs1(args.inputs):
        hs = read_hs1(path)
        if args.max_sentences is not None:
            if not 1 <= args.max_sentences <= len(hs.sentences):
                raise OutOfRange(
                    f"--max-sentences {args.max_sentences} outside 1..{len(hs.sentences)}"
                )
            hs = dataclasses.replace(hs, sentences=hs.sentences[: args.max_sentences])
        sets.append(pool_set(hs, strategy))
    return sets


def _write_metadata(out: Path, payload: dict) -> None:
    out.joinpath("metadata.json").write_text(
        json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def cmd_sim(args) -> int:
    sets = _load_embeddings(args)
    layers = _parse_layers(args.layers, sets[0].n_layers)
    if args.mode == "mono":
        sims = similarity.build_monolingual_similarity(sets, layers)
    else:
        sims = similarity.build_parallel_similarity(sets, layers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit = set(args.emit)
    if "csv" in emit:
        similarity.write_layer_csvs(sims, out)
    if "svg" in emit:
        for pos, layer in enumerate(sims.layer_indices):
            path = out / f"layer_{layer:02d}.svg"
            path.write_text(svg.heatmap_svg(sims.languages, sims.matrices[pos]), encoding="utf-8")
    _write_metadata(
        out,
        {
            "command": "sim",
            "mode": sims.mode.value,
            "n_sentences": sims.n_sentences,
            "pooling": args.pooling,
            "layers": list(sims.layer_indices),
            "languages": [str(c) for c in sims.languages],
            "notes": "monolingual mode compares per-language centroid embeddings",
        },
    )
    return 0


def _load_sim_csvs(sim_dir: str) -> similarity.LayerSimilaritySet:
    paths = sorted(Path(sim_dir).glob("layer_*.csv"))
    if not paths:
        raise FileNotFoundError(f"no layer_*.csv under {sim_dir}")
    languages = None
    mats = []
    indices = []
    for path in paths:
        langs, values, missing = read_matrix_csv(path)
        if missing.any():
            raise LangsimError(f"{path.name}: similarity matrices cannot have blanks")
        if languages is None:
            languages = langs
        elif langs != languages:
            raise LangsimError(f"{path.name}: language list differs across layers")
        mats.append(values)
        indices.append(int(path.stem.split("_")[1]))
    return similarity.LayerSimilaritySet(
        languages=tuple(languages),
        matrices=np.stack(mats),
        mode=similarity.SimilarityMode.PARALLEL,
        n_sentences=None,
        layer_indices=tuple(indices),
    )


def cmd_corr(args) -> int:
    if args.sim_dir:
        sims = _load_sim_csvs(args.sim_dir)
    else:
        sets = _load_embeddings(args)
        sims = similarity.build_parallel_similarity(sets)
    kind = MeasureKind(args.measure_kind)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for raw in args.measures:
        table = measures.load_measure_csv(raw, kind)
        report = analysis.correlation_report(sims, table)
        stem = Path(raw).stem
        analysis.write_report_csv(report, sims, out / f"corr_{stem}.csv")
        analysis.write_summary_json(report, out / f"corr_{stem}.json")
        analysis.write_layer_curve_csv(report, sims, out / f"corr_{stem}_layers.csv")
        for target, reason in report.skipped:
            print(f"warning: {stem}: skipped {target}: {reason}", file=sys.stderr)
    _write_metadata(
        out,
        {
            "command": "corr",
            "measure_kind": args.measure_kind,
            "measures": [Path(m).stem for m in args.measures],
            "notes": "per-target restriction set is shared across layers",
        },
    )
    return 0


def cmd_lex(args) -> int:
    corpus = load_parallel_corpus(args.corpus, args.max_sentences)
    matrix = lexstat.build_lex_matrix(corpus)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = measures.make_measure_table(
        "LEX", matrix.languages, matrix.values, kind=MeasureKind.SIMILARITY
    )
    measures.save_measure_csv(table, out / "LEX.csv")
    _write_metadata(
        out,
        {
            "command": "lex",
            "n_sentences": corpus.n_sentences,
            "languages": [str(c) for c in corpus.languages],
            "notes": "edit unit is the Unicode code point; no case folding or stripping",
        },
    )
    return 0


def cmd_cluster(args) -> int:
    languages, values, missing = read_matrix_csv(args.sim)
    if missing.any():
        raise LangsimError(f"{args.sim}: similarity matrix has blank cells")
    dendro = clustering.complete_linkage(languages, values)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit = set(args.emit)
    if "newick" in emit:
        out.joinpath("dendrogram.nwk").write_text(
            clustering.to_newick(dendro) + "\n", encoding="utf-8"
        )
    if "json" in emit:
        clustering.write_merge_json(dendro, out / "merges.json")
    if "svg" in emit:
        out.joinpath("dendrogram.svg").write_text(svg.dendrogram_svg(dendro), encoding="utf-8")
    if args.k is not None:
        groups = clustering.cut(dendro, args.k)
        payload = [[str(c) for c in group] for group in groups]
        out.joinpath(f"cut_{args.k}.json").write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
    if args.neighbors:
        target = parse_language_code(args.neighbors)
        found = clustering.neighbors(dendro, target)
        print(",".join(str(c) for c in sorted(found)))
    return 0


def _selection_for(role: str, args, table: transfer.ScoreTable):
    matrix = getattr(args, f"{role}matrix")
    selection = getattr(args, f"{role}selection")
    eng = getattr(args, f"{role}eng_baseline")
    sources = [parse_language_code(c) for c in args.sources.split(",")]
    default = parse_language_code(args.default_source)
    picked = [m for m in (matrix, selection, "eng" if eng else None) if m]
    if len(picked) != 1:
        return None
    if eng:
        return transfer.constant_selection(list(table.targets), default)
    if selection:
        return transfer.load_selection_csv(selection)
    langs, values, missing = read_matrix_csv(matrix)
    sim = measures.make_measure_table(
        Path(matrix).stem, tuple(langs), values, missing, MeasureKind.SIMILARITY
    )
    return transfer.select_sources(sim, list(table.targets), sources, default)


def cmd_transfer(args) -> int:
    table = transfer.load_score_csv(args.scores)
    primary = _selection_for("", args, table)
    if primary is None:
        raise OutOfRange("give exactly one of --matrix, --selection, --eng-baseline")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    transfer.write_selection_csv(primary, out / "selection.csv")
    per_target, macro = transfer.evaluate(table, primary)
    transfer.write_macro_json(table.task, macro, len(per_target), out / "macro.json")
    print(f"{table.task}: macro average {macro:.4f} over {len(per_target)} targets")
    wants_vs = args.vs_matrix or args.vs_selection or args.vs_eng_baseline
    if wants_vs:
        baseline = _selection_for("vs_", args, table)
        if baseline is None:
            raise OutOfRange("give exactly one of --vs-matrix, --vs-selection, --vs-eng-baseline")
        rows = transfer.delta_table(table, baseline, primary)
        transfer.write_delta_csv(rows, out / "delta.csv")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langsim",
        description="Language similarity from multilingual model hidden states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("sim", help="build per-layer similarity matrices from HS1 files")
    sim.add_argument("inputs", nargs="+", help="HS1 files or a directory of them")
    sim.add_argument("--pooling", choices=["mean", "position-weighted"], default="mean")
    sim.add_argument("--layers", default="all", help="'all' or one layer index")
    sim.add_argument("--max-sentences", type=int, default=None)
    sim.add_argument("--mode", choices=["parallel", "mono"], default="parallel")
    sim.add_argument("--emit", nargs="+", choices=["csv", "svg"], default=["csv"])
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_sim)

    corr = sub.add_parser("corr", help="correlate similarities against measure tables")
    corr.add_argument("inputs", nargs="*", default=[], help="HS1 files (unless --sim-dir)")
    corr.add_argument("--sim-dir", default=None, help="directory of layer_*.csv matrices")
    corr.add_argument("--measures", nargs="+", required=True, help="measure CSV files")
    corr.add_argument("--measure-kind", choices=["similarity", "distance"], default="similarity")
    corr.add_argument("--pooling", choices=["mean", "position-weighted"], default="mean")
    corr.add_argument("--max-sentences", type=int, default=None)
    corr.add_argument("--out", required=True)
    corr.set_defaults(func=cmd_corr)

    lex = sub.add_parser("lex", help="edit-distance similarity matrix from a parallel corpus")
    lex.add_argument("corpus", help="directory of <code>.txt files, one sentence per line")
    lex.add_argument("--max-sentences", type=int, default=None)
    lex.add_argument("--out", required=True)
    lex.set_defaults(func=cmd_lex)

    clus = sub.add_parser("cluster", help="complete-linkage clustering of a similarity CSV")
    clus.add_argument("sim", help="similarity matrix CSV")
    clus.add_argument("--k", type=int, default=None, help="also emit a flat cut into k groups")
    clus.add_argument("--neighbors", default=None, help="print the neighbor set of this code")
    clus.add_argument("--emit", nargs="+", choices=["newick", "json", "svg"],
                      default=["newick", "json", "svg"])
    clus.add_argument("--out", required=True)
    clus.set_defaults(func=cmd_cluster)

    tra = sub.add_parser("transfer", help="select sources and aggregate transfer scores")
    tra.add_argument("--scores", required=True, help="target-by-source score CSV")
    tra.add_argument("--matrix", default=None, help="similarity/measure CSV to select from")
    tra.add_argument("--selection", default=None, help="precomputed selection CSV")
    tra.add_argument("--eng-baseline", action="store_true", help="constant default source")
    tra.add_argument("--vs-matrix", default=None, help="baseline matrix for a delta table")
    tra.add_argument("--vs-selection", default=None, help="baseline selection for a delta table")
    tra.add_argument("--vs-eng-baseline", action="store_true")
    tra.add_argument("--sources", default=",".join(str(c) for c in transfer.DEFAULT_SOURCES))
    tra.add_argument("--default-source", default=str(transfer.DEFAULT_FALLBACK))
    tra.add_argument("--out", required=True)
    tra.set_defaults(func=cmd_transfer)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LangsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
