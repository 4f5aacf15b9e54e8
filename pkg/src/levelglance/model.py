"""Power-law level-glancing models in scaled units.

Time is measured as ``tau = beta * t`` and the only remaining parameter is
the dimensionless coupling ``alpha = Omega0 / beta``.  The diabatic
Hamiltonian is ``[[tau**N, alpha], [alpha, -tau**N]]``.

All functions accept real scalars or numpy arrays for ``tau``;
:func:`nonadiabatic_coupling` and :func:`adiabatic_energy` also accept
complex arguments, which the contour code relies on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ModelSpec:
    """Scaled model: detuning ``tau**n_power`` and constant coupling ``alpha``.

    Even ``n_power`` gives a level-glancing model, ``n_power == 1`` is
    Landau-Zener and odd ``n_power > 1`` gives the cubic-like crossing models.
    ``alpha == 0`` is accepted as the decoupled limit.
    """

    n_power: int
    alpha: float

    def __post_init__(self):
        if isinstance(self.n_power, bool) or int(self.n_power) != self.n_power:
            raise DomainError(f"n_power must be an integer, got {self.n_power!r}")
        if self.n_power < 1:
            raise DomainError(f"n_power must be >= 1, got {self.n_power}")
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        object.__setattr__(self, "n_power", int(self.n_power))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def is_glancing(self) -> bool:
        return self.n_power % 2 == 0

    @classmethod
    def from_raw(cls, n_power: int, beta: float, omega0: float) -> "ModelSpec":
        return cls(n_power, scale_parameters(beta, omega0))


def scale_parameters(beta: float, omega0: float) -> float:
    """Return the dimensionless coupling ``omega0 / beta``."""
    if not (beta > 0 and omega0 > 0):
        raise DomainError(f"beta and omega0 must be positive, got {beta!r}, {omega0!r}")
    return omega0 / beta


def detuning(spec: ModelSpec, tau):
    return tau ** spec.n_power


def adiabatic_energy(spec: ModelSpec, tau):
    """Half the adiabatic splitting, ``sqrt(alpha**2 + tau**(2N))``."""
    if np.iscomplexobj(tau):
        return np.sqrt(spec.alpha ** 2 + tau ** (2 * spec.n_power))
    return np.hypot(spec.alpha, tau ** spec.n_power)


def nonadiabatic_coupling(spec: ModelSpec, tau):
    """Coupling between adiabatic states for constant ``alpha``.

    The overall sign is fixed to ``+``; only relative signs matter downstream.
    """
    n, a = spec.n_power, spec.alpha
    return a * n * tau ** (n - 1) / (2.0 * (tau ** (2 * n) + a * a))


def rotating_phase(spec: ModelSpec, tau):
    """Rotating-frame angle, the antiderivative of the detuning."""
    n = spec.n_power
    return tau ** (n + 1) / (n + 1)


def field_vector(spec: ModelSpec, tau) -> np.ndarray:
    """Bloch field ``2 alpha (cos 2phi, sin 2phi, 0)`` in the rotating frame.

    For array ``tau`` the components are stacked along the first axis.
    """
    two_phi = 2.0 * rotating_phase(spec, tau)
    amp = 2.0 * spec.alpha
    return np.stack([amp * np.cos(two_phi), amp * np.sin(two_phi),
                     np.zeros_like(np.asarray(two_phi, dtype=float))])
