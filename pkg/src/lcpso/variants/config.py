from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import ConfigurationError

HOSTS = ("pso", "dms", "clpso", "hpso")
TECHNIQUES = ("", "d", "e", "de", "de2")

DEFAULT_GAMMA = 1e-7


@dataclass(frozen=True)
class HostHyperparams:
    c1: float = 2.0
    c2: float = 2.0
    w_start: float = 0.9
    w_end: float = 0.4
    dms_subswarm_size: int = 4
    dms_regroup_period: int = 5
    clpso_c: float = 1.49445
    clpso_refresh_gap: int = 7
    clpso_vmax_fraction: float = 0.2
    hpso_c1_range: tuple[float, float] = (2.5, 0.5)
    hpso_c2_range: tuple[float, float] = (0.5, 2.5)
    hpso_reinit_vmax_fraction: float = 0.5
    hpso_reinit_vmax_end_fraction: float = 0.1

    def __post_init__(self):
        positive = {
            "c1": self.c1, "c2": self.c2, "clpso_c": self.clpso_c,
            "dms_subswarm_size": self.dms_subswarm_size, "dms_regroup_period": self.dms_regroup_period,
            "clpso_refresh_gap": self.clpso_refresh_gap, "clpso_vmax_fraction": self.clpso_vmax_fraction,
            "hpso_reinit_vmax_fraction": self.hpso_reinit_vmax_fraction,
            "hpso_reinit_vmax_end_fraction": self.hpso_reinit_vmax_end_fraction,
        }
        for name, value in positive.items():
            if not value > 0:
                raise ConfigurationError(f"{name} must be positive, got {value}")
        if self.w_start < self.w_end or self.w_end < 0:
            raise ConfigurationError("inertia schedule needs w_start >= w_end >= 0")
        if min(self.hpso_c1_range + self.hpso_c2_range) <= 0:
            raise ConfigurationError("HPSO acceleration ranges must be positive")


@dataclass(frozen=True)
class VariantConfig:
    host: str = "pso"
    dimension_wise: bool = False
    # None disables event-triggering; a scalar or a per-dimension vector
    event_gamma: float | tuple[float, ...] | None = None
    de2_gating: bool = False
    hyper: HostHyperparams = field(default_factory=HostHyperparams)
    iterations: int = 5000
    n_particles: int = 40

    def __post_init__(self):
        if self.host not in HOSTS:
            raise ConfigurationError(f"unknown host {self.host!r}; expected one of {HOSTS}")
        if self.de2_gating and self.host != "hpso":
            raise ConfigurationError("de2 gating is only defined for the hpso host")
        if self.event_gamma is not None and np.any(np.asarray(self.event_gamma) < 0):
            raise ConfigurationError("event_gamma must be >= 0")
        if self.iterations < 0:
            raise ConfigurationError("iterations must be >= 0")
        if self.n_particles < 1:
            raise ConfigurationError("n_particles must be >= 1")
        if self.host == "dms" and self.n_particles % self.hyper.dms_subswarm_size:
            raise ConfigurationError(
                f"{self.n_particles} particles do not divide into sub-swarms of {self.hyper.dms_subswarm_size}")
        if self.host == "clpso" and self.n_particles < 3:
            raise ConfigurationError("clpso needs at least 3 particles for its tournaments")

    @property
    def name(self) -> str:
        suffix = ("d" if self.dimension_wise else "") + ("e" if self.event_gamma is not None else "")
        if self.de2_gating:
            suffix += "2"
        return f"{self.host}-{suffix}" if suffix else self.host

    def gamma_vector(self, dim: int) -> np.ndarray | None:
        if self.event_gamma is None:
            return None
        g = np.broadcast_to(np.asarray(self.event_gamma, dtype=float), (dim,))
        return g

    def baseline(self) -> "VariantConfig":
        """The plain host with the same budget and swarm size."""
        return VariantConfig(host=self.host, hyper=self.hyper, iterations=self.iterations,
                             n_particles=self.n_particles)


def parse_variant_name(name: str, *, gamma=DEFAULT_GAMMA, iterations: int = 5000, n_particles: int = 40,
                       hyper: HostHyperparams | None = None) -> VariantConfig:
    """``pso``, ``pso-d``, ``pso-e``, ``pso-de``, ... ``hpso-de2``."""
    host, _, tech = name.strip().lower().partition("-")
    if host not in HOSTS or tech not in TECHNIQUES:
        raise ConfigurationError(f"unknown variant {name!r}")
    if tech == "de2" and host != "hpso":
        raise ConfigurationError(f"variant {name!r}: de2 gating is only defined for hpso")
    return VariantConfig(
        host=host,
        dimension_wise="d" in tech,
        event_gamma=gamma if "e" in tech else None,
        de2_gating=tech == "de2",
        hyper=hyper or HostHyperparams(),
        iterations=iterations,
        n_particles=n_particles,
    )
