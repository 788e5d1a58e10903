"""Exhaustive search over coordinate combinations, used to check dimension-wise selection."""
from __future__ import annotations

import numpy as np

from ..core import swarm_from_positions
from ..objectives import OBJECTIVE_IDS, get_objective, total_cost

MAX_COMBINATIONS = 1_000_000
_CHUNK = 65_536


def brute_force_best_oracle(pbest_positions, spec) -> np.ndarray:
    """Best vector formed by taking each coordinate from one of the sources.

    Enumerates every combination in lexicographic order of source indices and
    keeps the first one with the lowest total cost.
    """
    sources = np.array(pbest_positions, dtype=float, ndmin=2)
    n, d = sources.shape
    if not spec.exact:
        raise ValueError("the exhaustive oracle is only meaningful for exactly separable objectives")
    if n**d > MAX_COMBINATIONS:
        raise ValueError(f"{n}**{d} combinations exceed the limit of {MAX_COMBINATIONS}")
    cols = np.arange(d)
    best_cost, best_vec = np.inf, None
    for start in range(0, n**d, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, n**d))
        choice = np.stack(np.unravel_index(flat, (n,) * d), axis=1)
        candidates = sources[choice, cols]
        costs = total_cost(spec, candidates)
        j = int(np.argmin(costs))
        if costs[j] < best_cost:
            best_cost, best_vec = costs[j], candidates[j]
    return best_vec.copy()


def random_instance(rng: np.random.Generator, max_dim: int = 4, max_particles: int = 5, span: int = 3):
    exact_ids = [o for o in OBJECTIVE_IDS if get_objective(o, 2).exact]
    spec = get_objective(exact_ids[rng.integers(len(exact_ids))], int(rng.integers(1, max_dim + 1)))
    n = int(rng.integers(1, max_particles + 1))
    positions = rng.integers(-span, span + 1, size=(n, spec.dimension)).astype(float)
    return spec, positions


def oracle_check(instances: int = 200, seed: int = 0) -> list[dict]:
    """Compare dimension-wise global best against the oracle on random integer instances.

    Returns the mismatching instances; an empty list means full agreement.
    """
    rng = np.random.default_rng(seed)
    mismatches = []
    for i in range(instances):
        spec, positions = random_instance(rng)
        swarm = swarm_from_positions(spec, positions, dimension_wise=True)
        expected = brute_force_best_oracle(positions, spec)
        if not np.array_equal(swarm.gbest_position, expected):
            mismatches.append({"instance": i, "objective": spec.id, "positions": positions.tolist(),
                               "dimension_wise": swarm.gbest_position.tolist(), "oracle": expected.tolist()})
    return mismatches
