"""Swarm state, seeded randomness and the position update shared by all hosts.

Particles are stored struct-of-arrays: a :class:`ParticleState` holds either a
single particle (1-D arrays of length D) or the whole swarm (arrays of shape
(N, D) with ``pbest_total`` of shape (N,)).  Every update function in the
package works on both layouts.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np


class ConfigurationError(ValueError):
    """Invalid bounds, swarm size or variant configuration."""


class NumericFault(ArithmeticError):
    """A non-finite value appeared in a velocity or position."""


@dataclass(frozen=True)
class Bounds:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ConfigurationError(f"bounds must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ConfigurationError(f"lower bound {self.lo} must be below upper bound {self.hi}")

    @property
    def width(self) -> float:
        return self.hi - self.lo


class RngStream:
    """Seeded PCG64 randomness split into two independent streams.

    ``coefficients`` feeds only the r1/r2 draws of the velocity update, so its
    draw count is exactly ``2 * N * D`` per iteration for every variant.  All
    other randomness (initial positions, sub-swarm regrouping, exemplar
    tournaments, velocity re-initialisation) comes from ``aux``.  Both are
    children of ``numpy.random.SeedSequence(seed)``.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        coeff_seq, aux_seq = np.random.SeedSequence(self.seed).spawn(2)
        self._coeff = np.random.Generator(np.random.PCG64(coeff_seq))
        self.aux = np.random.Generator(np.random.PCG64(aux_seq))
        self.coefficient_draws = 0

    def coefficients(self, n_particles: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
        """Draw r1, r2 in the order particle k, dimension d, then r1 before r2."""
        r = self._coeff.random((n_particles, dim, 2))
        self.coefficient_draws += r.size
        return r[..., 0], r[..., 1]


@dataclass
class ParticleState:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_components: np.ndarray
    pbest_total: np.ndarray

    @property
    def dim(self) -> int:
        return self.position.shape[-1]

    def copy(self) -> "ParticleState":
        return ParticleState(
            self.position.copy(),
            self.velocity.copy(),
            self.pbest_position.copy(),
            self.pbest_components.copy(),
            np.array(self.pbest_total, copy=True),
        )


@dataclass
class SwarmState:
    particles: ParticleState
    gbest_position: np.ndarray
    gbest_components: np.ndarray
    gbest_total: float
    iteration: int = 0
    # cost of each particle's current position, reused when a particle does not move
    current_components: np.ndarray | None = None
    current_total: np.ndarray | None = None
    # host bookkeeping: DMS sub-swarm table, CLPSO exemplar table and stall counters
    subswarms: np.ndarray | None = None
    exemplars: np.ndarray | None = None
    stall: np.ndarray | None = None
    extra: dict = field(default_factory=dict)

    @property
    def n_particles(self) -> int:
        return self.particles.position.shape[0]

    @property
    def dim(self) -> int:
        return self.particles.position.shape[1]

    def particle(self, k: int) -> ParticleState:
        p = self.particles
        return ParticleState(
            p.position[k].copy(),
            p.velocity[k].copy(),
            p.pbest_position[k].copy(),
            p.pbest_components[k].copy(),
            np.array(p.pbest_total[k]),
        )

    def copy(self) -> "SwarmState":
        def _c(a):
            return None if a is None else a.copy()

        return replace(
            self,
            particles=self.particles.copy(),
            gbest_position=self.gbest_position.copy(),
            gbest_components=self.gbest_components.copy(),
            current_components=_c(self.current_components),
            current_total=_c(self.current_total),
            subswarms=_c(self.subswarms),
            exemplars=_c(self.exemplars),
            stall=_c(self.stall),
            extra=dict(self.extra),
        )


def swarm_from_positions(spec, positions, dimension_wise: bool = False, counter=None) -> SwarmState:
    """Build an iteration-0 swarm at the given positions with zero velocity."""
    from .objectives import component_costs
    from .variants.updates import conventional_global_update, dimension_wise_global_update

    positions = np.array(positions, dtype=float, ndmin=2)
    n, d = positions.shape
    if n < 1:
        raise ConfigurationError("swarm needs at least one particle")
    if d != spec.dimension:
        raise ConfigurationError(f"positions have {d} dimensions, objective expects {spec.dimension}")
    costs = component_costs(spec, positions)
    if counter is not None:
        counter.cost_mults += n * spec.evaluation_mults
    particles = ParticleState(
        position=positions.copy(),
        velocity=np.zeros_like(positions),
        pbest_position=positions.copy(),
        pbest_components=costs.components.copy(),
        pbest_total=costs.total.copy(),
    )
    swarm = SwarmState(
        particles=particles,
        gbest_position=positions[0].copy(),
        gbest_components=np.full(d, np.inf),
        gbest_total=np.inf,
        current_components=costs.components.copy(),
        current_total=costs.total.copy(),
    )
    if dimension_wise:
        return dimension_wise_global_update(swarm, spec, counter)
    return conventional_global_update(swarm)


def initialize_swarm(spec, n_particles: int, rng: RngStream, dimension_wise: bool = False,
                     counter=None) -> SwarmState:
    """Uniform positions in the objective's initialisation range, zero velocities."""
    if n_particles < 1:
        raise ConfigurationError(f"n_particles must be positive, got {n_particles}")
    lo, hi = spec.init_range.lo, spec.init_range.hi
    positions = lo + (hi - lo) * rng.aux.random((n_particles, spec.dimension))
    return swarm_from_positions(spec, positions, dimension_wise, counter)


def position_update(particle: ParticleState, new_velocity, bounds: Bounds) -> ParticleState:
    """Move by ``new_velocity`` and clamp to ``bounds``.

    A clamped dimension has its velocity zeroed.
    """
    new_velocity = np.asarray(new_velocity, dtype=float)
    if new_velocity.shape != particle.position.shape:
        raise ValueError(f"velocity shape {new_velocity.shape} != position shape {particle.position.shape}")
    if not np.all(np.isfinite(new_velocity)):
        raise NumericFault("non-finite velocity component")
    moved = particle.position + new_velocity
    position = np.clip(moved, bounds.lo, bounds.hi)
    velocity = np.where(position != moved, 0.0, new_velocity)
    return replace(particle, position=position, velocity=velocity)
