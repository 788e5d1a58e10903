"""Velocity-update engines for the four hosts and their technique combinations."""
from .config import DEFAULT_GAMMA, HOSTS, HostHyperparams, VariantConfig, parse_variant_name
from .engine import run, start, step
from .hosts import (
    clpso_exemplar_assignment,
    clpso_learning_probabilities,
    dms_regroup,
    hpso_coefficients,
    hpso_velocity_reinit,
    inertia_weight,
    subswarm_attractors,
)
from .updates import (
    TriggerMask,
    compute_trigger_mask,
    conventional_best_update,
    conventional_global_update,
    dimension_wise_best_update,
    dimension_wise_global_update,
    velocity_update,
)

__all__ = [
    "DEFAULT_GAMMA", "HOSTS", "HostHyperparams", "VariantConfig", "parse_variant_name",
    "run", "start", "step",
    "clpso_exemplar_assignment", "clpso_learning_probabilities", "dms_regroup", "hpso_coefficients",
    "hpso_velocity_reinit", "inertia_weight", "subswarm_attractors",
    "TriggerMask", "compute_trigger_mask", "conventional_best_update", "conventional_global_update",
    "dimension_wise_best_update", "dimension_wise_global_update", "velocity_update",
]
