"""Experiment grids, report tables and the dimension sweep."""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from ..metrics import AggregateReport, aggregate
from ..objectives import get_objective
from ..variants.engine import run
from .config import ExperimentConfig

log = logging.getLogger(__name__)

REPORT_COLUMNS = ["function", "dim", "variant", "mean", "iters", "comp_pct", "sr", "runs", "seed0"]
SWEEP_COLUMNS = ["function", "variant", "dim", "mean", "sr", "runs"]


def _run_job(job):
    objective, dim, variant, seed, config = job
    try:
        return run(config.variant_config(variant), get_objective(objective, dim), seed)
    except Exception as exc:  # reported per cell, never aborts the grid
        return exc


def _execute(jobs, workers: int):
    if workers == 1 or len(jobs) < 2:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def run_grid(config: ExperimentConfig) -> list[AggregateReport]:
    """One report per (objective, dimension, variant), in config order.

    Run i of every cell uses seed ``base_seed + i``; each plain host is run
    once per (objective, dimension, seed) and serves as the Comp.% baseline of
    all its variants.
    """
    seeds = [config.base_seed + i for i in range(config.runs)]
    jobs, index = [], {}

    def want(objective, dim, variant, seed):
        key = (objective, dim, variant, seed)
        if key not in index:
            index[key] = len(jobs)
            jobs.append((objective, dim, variant, seed, config))
        return index[key]

    cells = []
    for objective in config.objectives:
        for dim in config.dims:
            for variant in config.variants:
                base = config.variant_config(variant).baseline().name
                runs = [want(objective, dim, variant, s) for s in seeds]
                bases = [want(objective, dim, base, s) for s in seeds]
                cells.append((objective, dim, variant, runs, bases))

    results = _execute(jobs, config.workers)
    reports = []
    for objective, dim, variant, runs, bases in cells:
        traces = [results[j] for j in runs]
        base_traces = [results[j] for j in bases]
        errors = [r for r in traces + base_traces if isinstance(r, Exception)]
        if errors:
            log.error("cell %s/%d/%s failed: %s", objective, dim, variant, errors[0])
            reports.append(AggregateReport(objective, dim, variant, config.runs, config.base_seed,
                                           None, None, None, 0.0, error=f"{type(errors[0]).__name__}: {errors[0]}"))
            continue
        spec = get_objective(objective, dim)
        reports.append(aggregate(traces, spec.accept_value, [t.counter for t in base_traces],
                                 function=objective, dim=dim, variant=variant, thresholds=config.thresholds))
    return reports


def _thresholds(reports):
    out = []
    for r in reports:
        for t in r.time_to_threshold:
            if t not in out:
                out.append(t)
    return out


def _full(x) -> str:
    return "" if x is None else repr(float(x))


def _short(x, suffix: str = "") -> str:
    return "×" if x is None else f"{x:.3g}{suffix}"


def emit_report(reports: list[AggregateReport], format: str = "csv") -> str:
    if not reports:
        raise ValueError("no reports to emit")
    thresholds = _thresholds(reports)
    header = REPORT_COLUMNS + [f"ttt_{t!r}" for t in thresholds] + ["status"]
    rows = []
    for r in reports:
        status = "ok" if r.error is None else f"failed: {r.error}"
        if format == "csv":
            row = [r.function, str(r.dim), r.variant, _full(r.mean_final), _full(r.convergence_iters),
                   _full(r.comp_percent), _full(r.success_rate), str(r.runs), str(r.seed0)]
            row += [_full(r.time_to_threshold.get(t, (None, 0.0))[0]) for t in thresholds]
        elif format == "markdown":
            row = [r.function, str(r.dim), r.variant, _short(r.mean_final), _short(r.convergence_iters),
                   _short(r.comp_percent, "%"), f"{r.success_rate:.3g}%", str(r.runs), str(r.seed0)]
            for t in thresholds:
                mean, rate = r.time_to_threshold.get(t, (None, 0.0))
                cell = _short(mean)
                if mean is not None and rate < 1.0:
                    cell += f" ({100 * rate:.0f}%)"
                row.append(cell)
        else:
            raise ValueError(f"unknown format {format!r}")
        rows.append(row + [status])
    return _render(header, rows, format)


def _render(header, rows, format: str) -> str:
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def dimension_robustness_sweep(config: ExperimentConfig, dims: list[int]) -> list[dict]:
    """Mean final cost of every (objective, variant) at each requested dimension."""
    if not dims:
        raise ValueError("dimension sweep needs at least one dimension")
    reports = run_grid(replace(config, dims=tuple(int(d) for d in dims)))
    rows = []
    for r in reports:
        rows.append({"function": r.function, "variant": r.variant, "dim": r.dim, "mean": r.mean_final,
                     "sr": r.success_rate, "runs": r.runs, "error": r.error})
    rows.sort(key=lambda row: (config.objectives.index(row["function"]),
                               config.variants.index(row["variant"]), row["dim"]))
    return rows


def emit_sweep(rows: list[dict]) -> str:
    body = [[row["function"], row["variant"], str(row["dim"]), _full(row["mean"]), _full(row["sr"]),
             str(row["runs"])] for row in rows]
    return _render(SWEEP_COLUMNS, body, "csv")


def failed(reports) -> bool:
    return any(r.failed for r in reports)

