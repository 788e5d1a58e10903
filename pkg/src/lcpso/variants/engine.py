from __future__ import annotations

from dataclasses import replace
from typing import Callable

import numpy as np

from ..core import RngStream, SwarmState, initialize_swarm, position_update
from ..metrics import OpCounter, RunTrace
from ..objectives import ComponentCosts, ObjectiveSpec, component_costs
from . import hosts
from .config import VariantConfig
from .updates import (
    compute_trigger_mask,
    conventional_best_update,
    conventional_global_update,
    dimension_wise_best_update,
    dimension_wise_global_update,
    velocity_update,
)


def init_host_state(swarm: SwarmState, config: VariantConfig, rng: RngStream) -> SwarmState:
    if config.host == "dms":
        swarm.subswarms = hosts.random_subswarms(swarm.n_particles, config.hyper.dms_subswarm_size, rng)
    elif config.host == "clpso":
        swarm.exemplars = np.empty((swarm.n_particles, swarm.dim), dtype=np.intp)
        swarm.stall = np.full(swarm.n_particles, config.hyper.clpso_refresh_gap)
        swarm = hosts.clpso_refresh(swarm, rng, config.hyper.clpso_refresh_gap)
    return swarm


def start(config: VariantConfig, spec: ObjectiveSpec, rng: RngStream, counter: OpCounter) -> SwarmState:
    swarm = initialize_swarm(spec, config.n_particles, rng, config.dimension_wise, counter)
    return init_host_state(swarm, config, rng)


def step(swarm: SwarmState, config: VariantConfig, spec: ObjectiveSpec, rng: RngStream,
         counter: OpCounter) -> SwarmState:
    """Advance the swarm by one iteration."""
    hyper = config.hyper
    i, budget = swarm.iteration, config.iterations
    p = swarm.particles
    n, d = p.position.shape
    width = spec.search_range.width

    # attractors and coefficients
    personal, social = p.pbest_position, None
    charge_inertia = True
    if config.host == "pso":
        w, c1, c2 = hosts.inertia_weight(i, budget, hyper), hyper.c1, hyper.c2
        social = np.broadcast_to(swarm.gbest_position, p.position.shape)
    elif config.host == "dms":
        w, c1, c2 = hosts.inertia_weight(i, budget, hyper), hyper.c1, hyper.c2
        social = hosts.subswarm_attractors(p, swarm.subswarms, config.dimension_wise)
    elif config.host == "clpso":
        swarm = hosts.clpso_refresh(swarm, rng, hyper.clpso_refresh_gap)
        w, c1, c2 = hosts.inertia_weight(i, budget, hyper), hyper.clpso_c, 0.0
        personal = hosts.clpso_attractors(swarm)
    else:
        w, c1, c2 = hosts.hpso_coefficients(i, budget, hyper)
        social = np.broadcast_to(swarm.gbest_position, p.position.shape)
        charge_inertia = False

    gamma = config.gamma_vector(d)
    mask = None if gamma is None else compute_trigger_mask(p, social, gamma, personal)
    v_new = velocity_update(p, personal, social, w, c1, c2, rng, mask, counter, charge_inertia)

    if config.host == "clpso":
        vmax = hyper.clpso_vmax_fraction * width
        v_new = np.clip(v_new, -vmax, vmax)
    elif config.host == "hpso":
        if mask is None:
            forced = np.zeros(v_new.shape, dtype=bool)
        else:
            forced = ~mask.cognitive_active & ~mask.social_active & (w * p.velocity == 0.0)
        v_new = hosts.hpso_velocity_reinit(v_new, forced, config.de2_gating, i, budget, width, rng, hyper)

    moved = position_update(p, v_new, spec.search_range)

    # a particle with zero velocity everywhere keeps its known cost
    active = np.any(v_new != 0.0, axis=1)
    comps = swarm.current_components.copy()
    totals = swarm.current_total.copy()
    n_eval = int(np.count_nonzero(active))
    if n_eval == n:
        fresh = component_costs(spec, moved.position)
        comps, totals = fresh.components, fresh.total
    elif n_eval:
        fresh = component_costs(spec, moved.position[active])
        comps[active] = fresh.components
        totals[active] = fresh.total
    counter.cost_mults += n_eval * spec.evaluation_mults
    counter.skipped_evaluations += n - n_eval
    candidate = ComponentCosts(comps, totals)

    if config.dimension_wise:
        updated = dimension_wise_best_update(moved, moved.position, candidate, spec, counter)
    else:
        updated = conventional_best_update(moved, moved.position, candidate)
    improved = np.any(updated.pbest_position != p.pbest_position, axis=1)

    swarm = replace(swarm, particles=updated, current_components=comps, current_total=totals)
    if config.dimension_wise:
        swarm = dimension_wise_global_update(swarm, spec, counter)
    else:
        swarm = conventional_global_update(swarm)

    if config.host == "clpso":
        swarm.stall = np.where(improved, 0, swarm.stall + 1)
    elif config.host == "dms":
        swarm.subswarms = hosts.dms_regroup(swarm, rng, hyper.dms_subswarm_size, hyper.dms_regroup_period, i + 1)
    swarm.iteration = i + 1
    return swarm


def run(config: VariantConfig, spec: ObjectiveSpec, seed: int,
        callback: Callable[[SwarmState], None] | None = None) -> RunTrace:
    """Run one seeded optimisation for the full iteration budget."""
    rng = RngStream(seed)
    counter = OpCounter()
    swarm = start(config, spec, rng, counter)
    best = np.empty(config.iterations + 1)
    best[0] = swarm.gbest_total
    if callback is not None:
        callback(swarm)
    for it in range(config.iterations):
        swarm = step(swarm, config, spec, rng, counter)
        best[it + 1] = swarm.gbest_total
        if callback is not None:
            callback(swarm)
    return RunTrace(best, counter, swarm.gbest_position.copy(), int(seed))
