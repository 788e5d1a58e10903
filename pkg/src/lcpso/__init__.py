"""Low-complexity particle swarm optimisation.

Event-triggered velocity updates (skip a pull when the particle is already
within ``gamma`` of its attractor) and dimension-wise best selection for
separable objectives, applied to standard PSO, DMS-PSO, CLPSO and HPSO.
"""
from .core import Bounds, ConfigurationError, NumericFault, ParticleState, RngStream, SwarmState
from .metrics import AggregateReport, OpCounter, RunTrace
from .objectives import OBJECTIVE_IDS, ObjectiveSpec, component_costs, get_objective, total_cost
from .variants import VariantConfig, parse_variant_name, run

__version__ = "0.1.0"
