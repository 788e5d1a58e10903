"""Event-triggered velocity updates and the two best-update rules.

All functions accept a single particle (1-D arrays) or a whole swarm
(2-D arrays, one row per particle).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..core import NumericFault, ParticleState, SwarmState
from ..metrics import OpCounter
from ..objectives import ComponentCosts, ObjectiveSpec, component_costs


@dataclass
class TriggerMask:
    cognitive_active: np.ndarray
    social_active: np.ndarray


def compute_trigger_mask(particle: ParticleState, social_attractor, gamma, personal_attractor=None) -> TriggerMask:
    """A term stays active while its distance is at least ``gamma``.

    ``personal_attractor`` defaults to the particle's own best; hosts with a
    single learning term pass their exemplar here and ``social_attractor=None``,
    which leaves every social entry inactive.
    """
    x = particle.position
    personal = particle.pbest_position if personal_attractor is None else personal_attractor
    gamma = np.asarray(gamma, dtype=float)
    cognitive = np.abs(personal - x) >= gamma
    if social_attractor is None:
        social = np.zeros(x.shape, dtype=bool)
    else:
        social = np.abs(social_attractor - x) >= gamma
    return TriggerMask(cognitive, social)


def velocity_update(particle: ParticleState, attractor_personal, attractor_social, w: float, c1: float,
                    c2: float, rng, mask: TriggerMask | None, counter: OpCounter,
                    charge_inertia: bool = True) -> np.ndarray:
    """Inertia plus cognitive and social pulls, with masked terms dropped.

    r1 and r2 are drawn for every entry whether or not the mask keeps the
    term.  Charges one multiplication for the inertia product (unless the host
    has no inertia term) and two for each active pull.
    """
    x, v = particle.position, particle.velocity
    n, d = (1, x.shape[0]) if x.ndim == 1 else x.shape
    r1, r2 = rng.coefficients(n, d)
    r1, r2 = r1.reshape(x.shape), r2.reshape(x.shape)
    size = x.size

    new = w * v
    cognitive = c1 * r1 * (attractor_personal - x)
    if mask is not None:
        cognitive = np.where(mask.cognitive_active, cognitive, 0.0)
        active_c = int(np.count_nonzero(mask.cognitive_active))
    else:
        active_c = size
    new = new + cognitive
    mults = (size if charge_inertia else 0) + 2 * active_c
    skipped = size - active_c

    if attractor_social is not None:
        social = c2 * r2 * (attractor_social - x)
        if mask is not None:
            social = np.where(mask.social_active, social, 0.0)
            active_s = int(np.count_nonzero(mask.social_active))
        else:
            active_s = size
        new = new + social
        mults += 2 * active_s
        skipped += size - active_s

    if not np.all(np.isfinite(new)):
        raise NumericFault("non-finite velocity in update")
    counter.update_mults += mults
    counter.skipped_terms += skipped
    return new


def conventional_best_update(particle: ParticleState, candidate_position, candidate: ComponentCosts) -> ParticleState:
    """Replace the personal best wholesale when the candidate total is strictly lower."""
    better = np.asarray(candidate.total < particle.pbest_total)
    rows = better[..., None]
    return replace(
        particle,
        pbest_position=np.where(rows, candidate_position, particle.pbest_position),
        pbest_components=np.where(rows, candidate.components, particle.pbest_components),
        pbest_total=np.where(better, candidate.total, particle.pbest_total),
    )


def dimension_wise_best_update(particle: ParticleState, candidate_position, candidate: ComponentCosts,
                               spec: ObjectiveSpec | None = None, counter: OpCounter | None = None) -> ParticleState:
    """Adopt each candidate coordinate whose component cost is strictly lower.

    On a non-separable objective (``spec.exact`` false) the spliced vector is
    re-evaluated, charged to ``counter``, and kept only if its true total beats
    the incumbent; otherwise the whole-vector comparison decides.
    """
    better = candidate.components < particle.pbest_components
    pos = np.where(better, candidate_position, particle.pbest_position)
    comps = np.where(better, candidate.components, particle.pbest_components)
    changed = np.any(better, axis=-1)
    if not np.any(changed):
        return particle
    if spec is None or spec.exact:
        total = np.where(changed, comps.sum(axis=-1), particle.pbest_total)
        return replace(particle, pbest_position=pos, pbest_components=comps, pbest_total=total)

    fresh = component_costs(spec, pos)
    if counter is not None:
        counter.cost_mults += int(np.count_nonzero(changed)) * spec.evaluation_mults
    spliced = changed & (fresh.total < particle.pbest_total)
    whole = ~spliced & (candidate.total < particle.pbest_total)
    s_rows, w_rows = spliced[..., None], whole[..., None]
    return replace(
        particle,
        pbest_position=np.where(s_rows, pos, np.where(w_rows, candidate_position, particle.pbest_position)),
        pbest_components=np.where(s_rows, fresh.components,
                                  np.where(w_rows, candidate.components, particle.pbest_components)),
        pbest_total=np.where(spliced, fresh.total, np.where(whole, candidate.total, particle.pbest_total)),
    )


def conventional_global_update(swarm: SwarmState) -> SwarmState:
    p = swarm.particles
    k = int(np.argmin(p.pbest_total))
    if p.pbest_total[k] < swarm.gbest_total:
        return replace(
            swarm,
            gbest_position=p.pbest_position[k].copy(),
            gbest_components=p.pbest_components[k].copy(),
            gbest_total=float(p.pbest_total[k]),
        )
    return swarm


def dimension_wise_global_update(swarm: SwarmState, spec: ObjectiveSpec | None = None,
                                 counter: OpCounter | None = None) -> SwarmState:
    """Per dimension, take the lowest-cost personal-best coordinate over the swarm.

    The incumbent wins ties, then the lowest particle index.  On a
    non-separable objective the assembled vector competes on true total with
    the incumbent and with the best personal best.
    """
    p = swarm.particles
    cols = np.arange(p.pbest_components.shape[1])
    k = np.argmin(p.pbest_components, axis=0)
    best = p.pbest_components[k, cols]
    better = best < swarm.gbest_components
    if not np.any(better):
        return swarm
    pos = np.where(better, p.pbest_position[k, cols], swarm.gbest_position)
    comps = np.where(better, best, swarm.gbest_components)
    if spec is None or spec.exact:
        return replace(swarm, gbest_position=pos, gbest_components=comps, gbest_total=float(comps.sum()))

    fresh = component_costs(spec, pos)
    if counter is not None:
        counter.cost_mults += spec.evaluation_mults
    j = int(np.argmin(p.pbest_total))
    if fresh.total < swarm.gbest_total and fresh.total <= p.pbest_total[j]:
        return replace(swarm, gbest_position=pos, gbest_components=fresh.components, gbest_total=float(fresh.total))
    return conventional_global_update(swarm)
