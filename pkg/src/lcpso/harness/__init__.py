"""Experiment configuration, grid execution, reporting and the exhaustive oracle."""
from .config import ConfigParseError, ExperimentConfig, parse_config, serialize_config
from .grid import dimension_robustness_sweep, emit_report, emit_sweep, run_grid
from .oracle import brute_force_best_oracle, oracle_check

__all__ = [
    "ConfigParseError", "ExperimentConfig", "parse_config", "serialize_config",
    "dimension_robustness_sweep", "emit_report", "emit_sweep", "run_grid",
    "brute_force_best_oracle", "oracle_check",
]
