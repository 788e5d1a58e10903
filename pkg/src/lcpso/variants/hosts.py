"""Host-specific machinery: schedules, DMS sub-swarms, CLPSO exemplars, HPSO restarts."""
from __future__ import annotations

import math

import numpy as np

from ..core import ConfigurationError, ParticleState, SwarmState
from .config import HostHyperparams


def linear_schedule(start: float, end: float, iteration: int, max_iterations: int) -> float:
    if max_iterations <= 1:
        return start
    return start + (end - start) * iteration / (max_iterations - 1)


def inertia_weight(iteration: int, max_iterations: int, hyper: HostHyperparams) -> float:
    return linear_schedule(hyper.w_start, hyper.w_end, iteration, max_iterations)


# -- DMS-PSO -----------------------------------------------------------------

def random_subswarms(n_particles: int, subswarm_size: int, rng) -> np.ndarray:
    if subswarm_size < 1 or n_particles % subswarm_size:
        raise ConfigurationError(f"{n_particles} particles do not divide into sub-swarms of {subswarm_size}")
    groups = rng.aux.permutation(n_particles).reshape(-1, subswarm_size)
    return np.sort(groups, axis=1)


def dms_regroup(swarm: SwarmState, rng, subswarm_size: int, period: int, iteration: int) -> np.ndarray:
    """Sub-swarm table of shape (N / size, size); reshuffled when ``iteration`` is a multiple of ``period``."""
    if swarm.subswarms is not None and iteration % period != 0:
        return swarm.subswarms
    return random_subswarms(swarm.n_particles, subswarm_size, rng)


def subswarm_attractors(particles: ParticleState, groups: np.ndarray, dimension_wise: bool) -> np.ndarray:
    """Each particle's social attractor: the best personal best inside its sub-swarm.

    With ``dimension_wise`` the attractor is assembled coordinate by coordinate
    from the lowest component costs in the sub-swarm.
    """
    n_groups, size = groups.shape
    d = particles.pbest_position.shape[1]
    rows = np.arange(n_groups)
    if dimension_wise:
        comps = particles.pbest_components[groups]              # (G, S, D)
        j = np.argmin(comps, axis=1)                            # (G, D)
        idx = groups[rows[:, None], j]                          # (G, D)
        per_group = particles.pbest_position[idx, np.arange(d)]
    else:
        j = np.argmin(particles.pbest_total[groups], axis=1)
        per_group = particles.pbest_position[groups[rows, j]]
    owner = np.empty(n_groups * size, dtype=np.intp)
    owner[groups.ravel()] = np.repeat(rows, size)
    return per_group[owner]


# -- CLPSO -------------------------------------------------------------------

def clpso_learning_probabilities(n_particles: int) -> np.ndarray:
    k = np.arange(n_particles, dtype=float)
    if n_particles == 1:
        return np.full(1, 0.05)
    return 0.05 + 0.45 * (np.exp(10.0 * k / (n_particles - 1)) - 1.0) / (math.exp(10.0) - 1.0)


def clpso_exemplar_assignment(particle_index: int, swarm: SwarmState, rng, pc: float) -> np.ndarray:
    """Exemplar particle index for every dimension of one particle.

    A dimension learns from a tournament between two distinct other particles
    with probability ``pc``; otherwise from the particle itself.  At least one
    dimension always learns from someone else.
    """
    if not 0.0 <= pc <= 1.0:
        raise ConfigurationError(f"learning probability must be in [0, 1], got {pc}")
    n, d = swarm.n_particles, swarm.dim
    if n < 3:
        raise ConfigurationError("exemplar tournaments need at least 3 particles")
    aux = rng.aux
    learn = aux.random(d) < pc
    if not learn.any():
        learn[aux.integers(d)] = True
    others = np.delete(np.arange(n), particle_index)
    a = aux.integers(0, n - 1, d)
    b = aux.integers(0, n - 2, d)
    b = b + (b >= a)
    ia, ib = others[a], others[b]
    totals = swarm.particles.pbest_total
    ta, tb = totals[ia], totals[ib]
    winner = np.where((tb < ta) | ((tb == ta) & (ib < ia)), ib, ia)
    return np.where(learn, winner, particle_index)


def clpso_refresh(swarm: SwarmState, rng, refresh_gap: int) -> SwarmState:
    """Reassign exemplars for particles that have stalled for ``refresh_gap`` iterations."""
    pcs = clpso_learning_probabilities(swarm.n_particles)
    for k in np.flatnonzero(swarm.stall >= refresh_gap):
        swarm.exemplars[k] = clpso_exemplar_assignment(int(k), swarm, rng, float(pcs[k]))
        swarm.stall[k] = 0
    return swarm


def clpso_attractors(swarm: SwarmState) -> np.ndarray:
    return swarm.particles.pbest_position[swarm.exemplars, np.arange(swarm.dim)]


# -- HPSO --------------------------------------------------------------------

def hpso_coefficients(iteration: int, max_iterations: int, hyper: HostHyperparams) -> tuple[float, float, float]:
    """No inertia; both acceleration coefficients move linearly over the run."""
    c1 = linear_schedule(*hyper.hpso_c1_range, iteration, max_iterations)
    c2 = linear_schedule(*hyper.hpso_c2_range, iteration, max_iterations)
    return 0.0, c1, c2


def hpso_reinit_bound(iteration: int, max_iterations: int, range_width: float, hyper: HostHyperparams) -> float:
    frac = linear_schedule(hyper.hpso_reinit_vmax_fraction, hyper.hpso_reinit_vmax_end_fraction,
                           iteration, max_iterations)
    return frac * range_width


def hpso_velocity_reinit(new_velocity, was_forced_zero_by_trigger, de2_gating: bool, iteration: int,
                         max_iterations: int, range_width: float, rng, hyper: HostHyperparams) -> np.ndarray:
    """Restart every zero velocity entry with a uniform draw in [-V_r, V_r].

    Under DE2 gating, entries that were zeroed by the event trigger are left
    at rest.
    """
    new_velocity = np.asarray(new_velocity, dtype=float)
    restart = new_velocity == 0.0
    if de2_gating:
        restart &= ~np.asarray(was_forced_zero_by_trigger, dtype=bool)
    count = int(np.count_nonzero(restart))
    if not count:
        return new_velocity
    vr = hpso_reinit_bound(iteration, max_iterations, range_width, hyper)
    out = new_velocity.copy()
    out[restart] = rng.aux.uniform(-vr, vr, count)
    return out
