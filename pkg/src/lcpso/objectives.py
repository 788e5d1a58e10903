"""Benchmark objectives evaluated in per-dimension component form."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Bounds, ConfigurationError

OBJECTIVE_IDS = ("sphere", "rosenbrock", "rastrigin", "michalewicz", "sum_of_powers")

MICHALEWICZ_M = 10

# (search range, init range, accept at D=30, accept at D=60, separability, mults per dim)
_TABLE = {
    "sphere": ((-100.0, 100.0), (-100.0, 50.0), 1.0, 1.0, "exact", 1),
    "rosenbrock": ((-10.0, 10.0), (-10.0, 10.0), 200.0, 500.0, "approximate", 4),
    "rastrigin": ((-5.12, 5.12), (-5.12, 2.0), 100.0, 200.0, "exact", 2),
    "michalewicz": ((-10.0, 10.0), (-10.0, 10.0), 1.0, 1.0, "exact", 4),
    "sum_of_powers": ((-10.0, 10.0), (-10.0, 10.0), 1.0, 1.0, "exact", 2),
}


@dataclass(frozen=True)
class ObjectiveSpec:
    id: str
    dimension: int
    search_range: Bounds
    init_range: Bounds
    accept_value: float
    separability: str
    mults_per_dim: int

    @property
    def exact(self) -> bool:
        return self.separability == "exact"

    @property
    def evaluation_mults(self) -> int:
        return evaluation_mult_count(self)


@dataclass
class ComponentCosts:
    components: np.ndarray
    total: np.ndarray


def get_objective(objective_id: str, dimension: int) -> ObjectiveSpec:
    """Look up a benchmark by id.

    The accept threshold uses the 30-D column for D <= 30 and the 60-D column
    above that.
    """
    if objective_id not in _TABLE:
        raise ConfigurationError(f"unknown objective {objective_id!r}; expected one of {OBJECTIVE_IDS}")
    if dimension < 1:
        raise ConfigurationError(f"dimension must be >= 1, got {dimension}")
    search, init, acc30, acc60, sep, mults = _TABLE[objective_id]
    return ObjectiveSpec(
        id=objective_id,
        dimension=int(dimension),
        search_range=Bounds(*search),
        init_range=Bounds(*init),
        accept_value=acc30 if dimension <= 30 else acc60,
        separability=sep,
        mults_per_dim=mults,
    )


def _components(objective_id: str, x: np.ndarray) -> np.ndarray:
    d = x.shape[-1]
    idx = np.arange(1, d + 1, dtype=float)
    if objective_id == "sphere":
        return x**2
    if objective_id == "rastrigin":
        return x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0
    if objective_id == "michalewicz":
        return -np.sin(x) * np.sin(idx * x**2 / np.pi) ** (2 * MICHALEWICZ_M)
    if objective_id == "sum_of_powers":
        return np.abs(x) ** (idx + 1.0)
    if objective_id == "rosenbrock":
        out = np.zeros_like(x)
        head, tail = x[..., :-1], x[..., 1:]
        out[..., :-1] = 100.0 * (head**2 - tail) ** 2 + (head - 1.0) ** 2
        return out
    raise ConfigurationError(f"unknown objective {objective_id!r}")


def component_costs(spec: ObjectiveSpec, x) -> ComponentCosts:
    """Per-dimension summands of the objective and their sum.

    ``x`` may be one point of length D or a batch of shape (..., D).  For
    Rosenbrock the coupling term between dimensions d and d+1 is charged to
    dimension d and the last component is zero.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.dimension:
        raise ValueError(f"expected {spec.dimension} coordinates, got {x.shape[-1]}")
    comps = _components(spec.id, x)
    return ComponentCosts(comps, comps.sum(axis=-1))


def total_cost(spec: ObjectiveSpec, x) -> float | np.ndarray:
    total = component_costs(spec, x).total
    return float(total) if np.ndim(total) == 0 else total


def evaluation_mult_count(spec: ObjectiveSpec) -> int:
    """Multiplications charged for evaluating one particle once."""
    return spec.mults_per_dim * spec.dimension
