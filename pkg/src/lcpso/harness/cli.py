"""Command line entry point: ``lcpso {run,grid,sweep,oracle-check}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..core import ConfigurationError
from .config import apply_overrides, parse_config
from .grid import dimension_robustness_sweep, emit_report, emit_sweep, failed, run_grid
from .oracle import oracle_check

log = logging.getLogger("lcpso")


def _csv_list(kind):
    def parse(text: str):
        try:
            return tuple(kind(s.strip()) for s in text.split(",") if s.strip())
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _add_experiment_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="key: value config file; flags below override its keys")
    p.add_argument("--objective", type=_csv_list(str), help="comma separated objective ids")
    p.add_argument("--dim", type=_csv_list(int), help="comma separated dimensions")
    p.add_argument("--variant", type=_csv_list(str), help="comma separated variant names, e.g. pso,pso-de")
    p.add_argument("--particles", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--seed", type=int, help="base seed; run i uses seed + i")
    p.add_argument("--thresholds", type=_csv_list(float), help="time-to-threshold levels")
    p.add_argument("--workers", type=int, help="parallel processes for independent runs")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=["csv", "markdown"])


def _experiment(args):
    config = parse_config(args.config.read_text()) if args.config else None
    return apply_overrides(
        config,
        objectives=args.objective, dims=args.dim, variants=args.variant, n_particles=args.particles,
        iterations=args.iterations, runs=args.runs, gamma=args.gamma, base_seed=args.seed,
        thresholds=args.thresholds, workers=args.workers, output=args.out, format=args.format,
    )


def _write(text: str, path: str | None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcpso", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [("run", "one (objective, dim, variant) cell"),
                            ("grid", "every objective x dim x variant cell")]:
        _add_experiment_flags(sub.add_parser(name, help=help_text))

    sweep = sub.add_parser("sweep", help="mean final cost against dimension")
    _add_experiment_flags(sweep)
    sweep.add_argument("--dims", type=_csv_list(int), required=True, help="dimensions to sweep, e.g. 10,30,60")

    oracle = sub.add_parser("oracle-check", help="dimension-wise best vs exhaustive search")
    oracle.add_argument("--instances", type=int, default=200)
    oracle.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "oracle-check":
            mismatches = oracle_check(args.instances, args.seed)
            for m in mismatches:
                print(json.dumps(m))
            print(f"{args.instances - len(mismatches)}/{args.instances} instances agree")
            return 1 if mismatches else 0

        config = _experiment(args)
        if args.command == "run" and len(config.objectives) * len(config.dims) * len(config.variants) != 1:
            raise ConfigurationError("run takes exactly one objective, dim and variant; use grid for more")
        if args.command == "sweep":
            rows = dimension_robustness_sweep(config, list(args.dims))
            _write(emit_sweep(rows), config.output)
            return 1 if any(r["error"] for r in rows) else 0
        reports = run_grid(config)
        _write(emit_report(reports, config.format), config.output)
        return 1 if failed(reports) else 0
    except (ConfigurationError, OSError) as exc:
        print(f"lcpso: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
