"""Command-line front end.

Usage::

    credal-communities detect --input karate.gml --cmin 2 --cmax 6 --seed 42

Exit status is 0 on success, 1 for input or validation errors and 2 for
numerical failures (eigensolver or degenerate clustering).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import report as rpt
from .ecm import EcmParams
from .errors import InputError, NumericalError
from .export import export_dot
from .graph import load_graph
from .pipeline import BASELINES, SweepConfig, detect

log = logging.getLogger("credal_communities")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _max_card(text: str):
    if text == "full":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--max-card expects an integer or 'full', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"--max-card must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="credal-communities",
                     description="Overlapping community detection with evidential c-means.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("detect", help="sweep the community count and write a JSON report")
    p.add_argument("--input", required=True, type=Path, help="graph file (.gml or edge list)")
    p.add_argument("--format", default="auto", choices=["auto", "gml", "edge-list"])
    p.add_argument("--cmin", type=int, default=2)
    p.add_argument("--cmax", type=int, default=6)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--delta", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-card", type=_max_card, default=None,
                   help="cardinality cap for focal sets other than the whole frame, or 'full'")
    p.add_argument("--pl-normalized", action="store_true",
                   help="divide plausibilities by 1 - m(empty) before scoring")
    p.add_argument("--baselines", nargs="*", choices=BASELINES, default=None,
                   help="also run c-means and/or fuzzy c-means (bare flag: both)")
    p.add_argument("--fcm-lambda", type=float, default=0.25)
    p.add_argument("--output", type=Path, help="report path (default: stdout)")
    p.add_argument("--dot", type=Path, help="write a DOT rendering of the best c")
    p.add_argument("--embedding-out", type=Path, help="write the best c's embedding as CSV")
    p.add_argument("--emit-curve", type=Path, help="write the c,Q_e,Q_h,Q_fuzzy table as CSV")
    p.add_argument("--verbose", "-v", action="count", default=0)
    return parser


def _config_dict(args) -> dict:
    return {
        "input": str(args.input),
        "format": args.format,
        "cmin": args.cmin,
        "cmax": args.cmax,
        "alpha": args.alpha,
        "beta": args.beta,
        "delta": args.delta,
        "seed": args.seed,
        "restarts": args.restarts,
        "max_iter": args.max_iter,
        "tol": args.tol,
        "max_card": "full" if args.max_card is None else args.max_card,
        "pl_normalized": args.pl_normalized,
        "baselines": list(args.baselines) if args.baselines is not None else [],
        "fcm_lambda": args.fcm_lambda,
    }


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from None


def _detect(args) -> int:
    baselines = args.baselines
    if baselines is not None and not baselines:
        baselines = list(BASELINES)
    args.baselines = baselines
    try:
        params = EcmParams(alpha=args.alpha, beta=args.beta, delta=args.delta,
                           max_iter=args.max_iter, tol=args.tol, restarts=args.restarts,
                           seed=args.seed)
        cfg = SweepConfig(c_min=args.cmin, c_max=args.cmax, ecm=params, max_card=args.max_card,
                          pl_normalized=args.pl_normalized, baselines=tuple(baselines or ()),
                          fcm_threshold=args.fcm_lambda)
    except InputError as exc:
        raise InputError(f"invalid option: {exc}") from None
    g = load_graph(args.input, args.format)
    log.info("loaded %s: n=%d, %d edges", args.input, g.n, g.n_edges)
    try:
        cfg.validate_for(g)
    except InputError as exc:
        raise InputError(f"{args.input}: {exc} (check --cmax/--max-card)") from None
    result = detect(g, cfg)
    doc = rpt.build_report(g, result, _config_dict(args))
    text = rpt.dumps(doc)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    if args.emit_curve:
        _write(args.emit_curve, rpt.curve_csv(result))
    if args.dot:
        _write(args.dot, export_dot(g, result.best))
    if args.embedding_out:
        _write(args.embedding_out, rpt.embedding_csv(g, result.best))
    log.info("best c = %d", result.best_c)
    return 0


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        if args.command == "detect":
            return _detect(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
