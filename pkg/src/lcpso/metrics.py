"""Operation counters, run traces and the aggregate statistics of a batch of runs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class OpCounter:
    """Multiplication counts for one run.

    ``skipped_terms`` and ``skipped_evaluations`` are bookkeeping only; they do
    not enter the computation percentage.
    """

    update_mults: int = 0
    cost_mults: int = 0
    skipped_terms: int = 0
    skipped_evaluations: int = 0

    @property
    def total(self) -> int:
        return self.update_mults + self.cost_mults

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.update_mults + other.update_mults,
            self.cost_mults + other.cost_mults,
            self.skipped_terms + other.skipped_terms,
            self.skipped_evaluations + other.skipped_evaluations,
        )


@dataclass
class RunTrace:
    best_cost_by_iteration: np.ndarray
    counter: OpCounter
    final_position: np.ndarray
    seed: int

    @property
    def final(self) -> float:
        return float(self.best_cost_by_iteration[-1])

    @property
    def iterations(self) -> int:
        return len(self.best_cost_by_iteration) - 1


@dataclass
class AggregateReport:
    function: str
    dim: int
    variant: str
    runs: int
    seed0: int
    mean_final: float | None
    convergence_iters: float | None
    comp_percent: float | None
    success_rate: float
    # threshold -> (mean first-hit iteration over runs that hit it, fraction of runs that hit)
    time_to_threshold: dict[float, tuple[float | None, float]] = field(default_factory=dict)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def success_of_run(trace: RunTrace, accept_value: float) -> bool:
    final = trace.final
    return not math.isnan(final) and final < accept_value


def convergence_iteration(trace: RunTrace, rel_tol: float = 1e-12) -> int:
    """Last iteration whose best cost improved by more than ``rel_tol`` (relative, floored at 1)."""
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    best = np.asarray(trace.best_cost_by_iteration, dtype=float)
    prev, cur = best[:-1], best[1:]
    with np.errstate(invalid="ignore"):
        improved = (prev - cur) > rel_tol * np.maximum(1.0, np.abs(prev))
    hits = np.flatnonzero(improved)
    return int(hits[-1]) + 1 if hits.size else 0


def time_to_threshold(trace: RunTrace, threshold: float) -> int | None:
    """First iteration whose best cost is below ``threshold``; None if never reached."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    hits = np.flatnonzero(np.asarray(trace.best_cost_by_iteration) < threshold)
    return int(hits[0]) if hits.size else None


def relative_computation(variant: OpCounter, base: OpCounter) -> float:
    if base.total <= 0:
        raise ValueError("base counter has no multiplications")
    return 100.0 * variant.total / base.total


def aggregate(traces: list[RunTrace], accept_value: float, base_counters: list[OpCounter] | None = None,
              *, function: str = "", dim: int = 0, variant: str = "",
              thresholds: tuple[float, ...] = ()) -> AggregateReport:
    """Fold a batch of runs into one table row.

    Mean and convergence iteration are taken over successful runs only.  The
    computation percentage compares summed counters of the batch against
    summed base counters.
    """
    if not traces:
        raise ValueError("aggregate needs at least one trace")
    ok = [t for t in traces if success_of_run(t, accept_value)]
    mean = float(np.mean([t.final for t in ok])) if ok else None
    iters = float(np.mean([convergence_iteration(t) for t in ok])) if ok else None
    comp = None
    if base_counters:
        comp = relative_computation(sum((t.counter for t in traces), OpCounter()),
                                    sum(base_counters, OpCounter()))
    ttt = {}
    for thr in thresholds:
        hits = [h for h in (time_to_threshold(t, thr) for t in traces) if h is not None]
        ttt[thr] = (float(np.mean(hits)) if hits else None, len(hits) / len(traces))
    return AggregateReport(
        function=function,
        dim=dim,
        variant=variant,
        runs=len(traces),
        seed0=traces[0].seed,
        mean_final=mean,
        convergence_iters=iters,
        comp_percent=comp,
        success_rate=100.0 * len(ok) / len(traces),
        time_to_threshold=ttt,
    )
