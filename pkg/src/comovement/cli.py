"""Command-line interface.

Subcommands: run (full pipeline), synth, analyze, cluster, rpr.
Exit codes: 0 success, 2 input error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import date
from pathlib import Path

from .clustering import agglomerate, correlation_distance, cut_at_correlation, reorder_heatmap
from .correlation import correlation_from_csv
from .errors import InputError, NumericalError
from .nullmodel import RNG_ALGORITHM
from .participation import collective_report, independency_pdf, relative_participation_ratio
from .pipeline import EMIT_CHOICES, RunConfig, run_pipeline
from .report import (
    atomic_write_text,
    write_communities_csv,
    write_heatmap_csv,
    write_histogram_csv,
    write_json,
    write_leaf_order_json,
    write_newick_file,
    write_npr_csv,
    write_pr_csv,
    write_report_json,
    write_tree_json,
)
from .synth import FactorSpec, generate_blocks, generate_one_factor, to_price_panel


def _parse_iso(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise InputError(f"bad date {text!r} (expected YYYY-MM-DD)") from None


def _parse_blocks(text: str) -> list[tuple[int, float]]:
    """Parse 'size:gamma,size:gamma' block descriptions."""
    blocks = []
    for part in text.split(","):
        try:
            size, gamma = part.split(":")
            blocks.append((int(size), float(gamma)))
        except ValueError:
            raise InputError(f"bad block spec {part!r} (expected SIZE:GAMMA)") from None
    return blocks


def _add_ingest_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="price CSV")
    p.add_argument("--layout", choices=("wide", "long"), default="wide")
    p.add_argument("--align", choices=("intersection", "forward_fill"), default="intersection")
    p.add_argument("--max-gap", type=int, default=None, help="forward_fill gap limit")
    p.add_argument("--from", dest="date_from", default=None, help="first date (YYYY-MM-DD)")
    p.add_argument("--to", dest="date_to", default=None, help="last date (YYYY-MM-DD)")


def _add_ensemble_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ensemble", type=int, default=100, help="shuffle ensemble size M")
    p.add_argument("--seed", type=int, default=0, help="shuffle RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comovement",
        description="Collective co-movement metrics for correlated time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="full pipeline: prices -> all artifacts")
    _add_ingest_flags(p)
    _add_ensemble_flags(p)
    p.add_argument("--linkage", choices=("average", "single", "complete"), default="average")
    p.add_argument("--threshold", type=float, default=0.3, help="community correlation cut")
    p.add_argument("--bins", type=int, default=20, help="histogram bins")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--emit",
        default=",".join(EMIT_CHOICES),
        help=f"comma list of {','.join(EMIT_CHOICES)}",
    )

    p = sub.add_parser("synth", help="synthetic market -> wide price CSV")
    p.add_argument("--n", type=int, required=True, help="asset count")
    p.add_argument("--t", type=int, required=True, help="return steps (dates = t+1)")
    p.add_argument("--gamma", type=float, default=0.0, help="one-factor loading")
    p.add_argument("--blocks", default=None, help="SIZE:GAMMA,SIZE:GAMMA,... block model")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("analyze", help="prices -> participation report artifacts")
    _add_ingest_flags(p)
    _add_ensemble_flags(p)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("cluster", help="correlation CSV -> dendrogram artifacts")
    p.add_argument("--input", required=True, help="correlation CSV (labels header/column)")
    p.add_argument("--linkage", choices=("average", "single", "complete"), default="average")
    p.add_argument("--threshold", type=float, default=0.3)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("rpr", help="correlation CSV -> relative participation ratio")
    p.add_argument("--input", required=True, help="correlation CSV")
    _add_ensemble_flags(p)
    p.add_argument("--out", default=None, help="output JSON (default: stdout)")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        input_path=Path(args.input),
        out_dir=Path(args.out),
        layout=args.layout,
        align_policy=args.align,
        max_gap=args.max_gap,
        date_from=_parse_iso(args.date_from) if args.date_from else None,
        date_to=_parse_iso(args.date_to) if args.date_to else None,
        ensemble=args.ensemble,
        seed=args.seed,
        linkage=args.linkage,
        threshold=args.threshold,
        bins=args.bins,
        emit=tuple(part.strip() for part in args.emit.split(",") if part.strip()),
    )
    for path in run_pipeline(cfg):
        print(path)
    return 0


def _write_price_csv(panel, path: Path) -> None:
    rows = [["date", *panel.labels]]
    for j, day in enumerate(panel.dates):
        rows.append([day.isoformat(), *(format(x, ".17g") for x in panel.prices[:, j])])
    atomic_write_text(path, "\n".join(",".join(r) for r in rows) + "\n")


def _cmd_synth(args: argparse.Namespace) -> int:
    blocks = _parse_blocks(args.blocks) if args.blocks else None
    spec = FactorSpec(n=args.n, t=args.t, gamma=args.gamma, seed=args.seed, blocks=blocks)
    rp = generate_blocks(spec) if blocks else generate_one_factor(spec)
    _write_price_csv(to_price_panel(rp), Path(args.out))
    print(args.out)
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        input_path=Path(args.input),
        out_dir=Path(args.out),
        layout=args.layout,
        align_policy=args.align,
        max_gap=args.max_gap,
        date_from=_parse_iso(args.date_from) if args.date_from else None,
        date_to=_parse_iso(args.date_to) if args.date_to else None,
        ensemble=args.ensemble,
        seed=args.seed,
        bins=args.bins,
        emit=("report", "histogram"),
    )
    for path in run_pipeline(cfg):
        print(path)
    return 0


def _cmd_cluster(args: argparse.Namespace) -> int:
    C = correlation_from_csv(args.input)
    tree = agglomerate(correlation_distance(C), linkage=args.linkage)
    communities = cut_at_correlation(tree, args.threshold, C.labels)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(write_newick_file(tree, C.labels, out / "dendrogram.newick"))
    print(write_tree_json(tree, C.labels, out / "dendrogram.json"))
    print(write_communities_csv(communities, out / "communities.csv"))
    print(write_heatmap_csv(reorder_heatmap(C, tree), out / "heatmap.csv"))
    print(write_leaf_order_json(tree, C.labels, out / "heatmap_order.json"))
    return 0


def _cmd_rpr(args: argparse.Namespace) -> int:
    C = correlation_from_csv(args.input)
    delta, delta_std = relative_participation_ratio(C, args.ensemble, args.seed)
    payload = {
        "delta": delta,
        "delta_std": delta_std,
        "ensemble_meta": {"count": args.ensemble, "seed": args.seed, "rng": RNG_ALGORITHM},
    }
    if args.out:
        print(write_json(payload, args.out))
    else:
        print(json.dumps(payload, indent=2))
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "synth": _cmd_synth,
    "analyze": _cmd_analyze,
    "cluster": _cmd_cluster,
    "rpr": _cmd_rpr,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
