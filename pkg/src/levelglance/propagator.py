"""Time-domain dynamics in the rotating frame.

The equations integrated are

    i dc1/dtau = alpha exp(-2i phi) c2,   i dc2/dtau = alpha exp(+2i phi) c1

with ``phi = tau**(N+1)/(N+1)``, or the equivalent Bloch equations
``dR/dtau = B x R``.  This pair is the exact rotating frame of the model
with the sign of the detuning flipped, which has identical populations;
the adiabatic states used at the window edges are taken from that
Hamiltonian so that frame and boundary conditions agree.

Finite windows are handled in the adiabatic basis: the state at ``-T`` is
the adiabatic state that connects to diabatic state 2, and the reported
probability is the population of the other adiabatic state at ``+T``.  The
wings then contribute only at superadiabatic order, so modest windows
converge where diabatic projections would oscillate like ``alpha/T**N``.
For even N this equals ``|c1(inf)|**2``; for odd N the adiabatic labels
swap and it equals ``|c2(inf)|**2``, the nonadiabatic transition
probability (``exp(-pi alpha**2)`` for Landau-Zener).

The window is grown by doubling the rotating-frame phase at its edge,
``T -> T * 2**(1/(N+1))``, until successive probabilities agree to
``convergence_tol``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import _dop853
from .errors import ConvergenceError, DomainError, IntegratorError, ValidityError
from .model import ModelSpec, rotating_phase
from .special import gen_fresnel, gen_fresnel_limit


@dataclass(frozen=True)
class ComplexAmplitudes:
    """Rotating-frame amplitudes of the two diabatic states."""
    c1: complex
    c2: complex


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float


class TrajectoryPoint(NamedTuple):
    tau: float
    state: ComplexAmplitudes | BlochVector
    probability: float


@dataclass(frozen=True)
class PropagationConfig:
    """Accuracy and window policy.

    ``window_half_width`` is the first window tried; when ``None`` it is
    chosen so that the edge phase equals ``initial_phase`` (and at least
    1.5 times the radius of the complex zeros).
    """
    window_half_width: float | None = None
    rtol: float = 1e-10
    atol: float = 1e-12
    convergence_tol: float = 1e-6
    max_window: float = 160.0
    sample_count: int = 0
    initial_phase: float = 100.0
    max_phase: float = 2.0e5
    max_steps: int = 50_000_000

    def __post_init__(self):
        if self.window_half_width is not None:
            if not self.window_half_width > 0:
                raise DomainError("window_half_width must be positive")
            if self.window_half_width > self.max_window:
                raise DomainError("window_half_width exceeds max_window")
        for name in ("rtol", "atol", "convergence_tol", "max_window",
                     "initial_phase", "max_phase"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.sample_count < 0:
            raise DomainError("sample_count must be >= 0")


@dataclass
class PropagationResult:
    final_probability: float
    trajectory: list[TrajectoryPoint]
    converged_window: float
    unitarity_drift: float
    step_count: int
    history: list[tuple[float, float]] = field(default_factory=list)


def initial_window(spec: ModelSpec, config: PropagationConfig) -> float:
    if config.window_half_width is not None:
        return float(config.window_half_width)
    n = spec.n_power
    t_phase = (config.initial_phase * (n + 1)) ** (1.0 / (n + 1))
    t_zero = 1.5 * spec.alpha ** (1.0 / n)
    return min(max(t_phase, t_zero), config.max_window)


def _mixing(spec: ModelSpec, tau: float):
    # adiabatic angle and rotating phase factor of the frame Hamiltonian
    # [[-tau^N, alpha e^{-2i phi}], [alpha e^{2i phi}, tau^N]]
    theta = math.atan2(spec.alpha, -(tau ** spec.n_power))
    two_phi = 2.0 * rotating_phase(spec, tau)
    return theta, two_phi


def adiabatic_amplitudes(spec: ModelSpec, tau: float, upper: bool) -> np.ndarray:
    """Rotating-frame amplitudes of the upper or lower adiabatic state."""
    theta, two_phi = _mixing(spec, tau)
    w = complex(math.cos(two_phi), math.sin(two_phi))
    if upper:
        return np.array([math.cos(theta / 2), w * math.sin(theta / 2)])
    return np.array([-math.sin(theta / 2), w * math.cos(theta / 2)])


def adiabatic_direction(spec: ModelSpec, tau: float) -> np.ndarray:
    """Unit Bloch vector of the upper adiabatic state in the rotating frame."""
    theta, two_phi = _mixing(spec, tau)
    st = math.sin(theta)
    return np.array([st * math.cos(two_phi), st * math.sin(two_phi), math.cos(theta)])


def _starts_upper(spec: ModelSpec) -> bool:
    # diabatic state 2 sits at energy +tau^N in the frame Hamiltonian
    return spec.is_glancing


def _run_window(spec, config, kind, T):
    upper0 = _starts_upper(spec)
    if kind == _dop853.AMPLITUDES:
        v = adiabatic_amplitudes(spec, -T, upper0)
        y0 = np.array([v[0].real, v[0].imag, v[1].real, v[1].imag])
    else:
        y0 = adiabatic_direction(spec, -T) * (1.0 if upper0 else -1.0)
    if config.sample_count > 0:
        tout = np.linspace(-T, T, config.sample_count)
        tout[-1] = T
    else:
        tout = np.array([T])
    states, status, steps, drift = _dop853.integrate(
        kind, spec.n_power, spec.alpha, -T, y0, tout,
        config.rtol, config.atol, config.max_steps)
    if status != _dop853.OK:
        reason = {_dop853.STEP_UNDERFLOW: "step size underflow",
                  _dop853.NOT_FINITE: "non-finite error estimate",
                  _dop853.TOO_MANY_STEPS: "step limit exceeded"}[status]
        raise IntegratorError(f"integration failed on window T={T:g}: {reason}")
    end = states[-1]
    if kind == _dop853.AMPLITUDES:
        c = np.array([end[0] + 1j * end[1], end[2] + 1j * end[3]])
        w = adiabatic_amplitudes(spec, T, not upper0)
        p = abs(np.vdot(w, c)) ** 2
    else:
        sign = -1.0 if upper0 else 1.0
        p = 0.5 * (1.0 + sign * float(np.dot(end, adiabatic_direction(spec, T))))
    return p, tout, states, steps, drift


def _trajectory(kind, tout, states) -> list[TrajectoryPoint]:
    points = []
    for tau, s in zip(tout, states):
        if kind == _dop853.AMPLITUDES:
            state = ComplexAmplitudes(complex(s[0], s[1]), complex(s[2], s[3]))
            prob = s[0] ** 2 + s[1] ** 2
        else:
            state = BlochVector(s[0], s[1], s[2])
            prob = 0.5 * (1.0 + s[2])
        points.append(TrajectoryPoint(float(tau), state, float(prob)))
    return points


def _propagate(spec: ModelSpec, config: PropagationConfig, kind: int) -> PropagationResult:
    n = spec.n_power
    growth = 2.0 ** (1.0 / (n + 1))
    T = initial_window(spec, config)
    history = []
    drift_max = 0.0
    prev = None
    while True:
        p, tout, states, steps, drift = _run_window(spec, config, kind, T)
        drift_max = max(drift_max, drift)
        history.append((T, p))
        if prev is not None and abs(p - prev) < config.convergence_tol:
            break
        T_next = T * growth
        if T_next > config.max_window or rotating_phase(spec, T_next) > config.max_phase:
            last_two = (math.nan if prev is None else prev, p)
            raise ConvergenceError(
                f"probability not converged at window T={T:g} "
                f"(last two values {last_two[0]:.12g}, {p:.12g})", *last_two, T)
        prev = p
        T = T_next
    traj = _trajectory(kind, tout, states) if config.sample_count > 0 else []
    return PropagationResult(float(p), traj, T, drift_max, int(steps), history)


def propagate_amplitudes(spec: ModelSpec, config: PropagationConfig | None = None) -> PropagationResult:
    """Nonadiabatic transition probability from the amplitude equations."""
    return _propagate(spec, config or PropagationConfig(), _dop853.AMPLITUDES)


def propagate_bloch(spec: ModelSpec, config: PropagationConfig | None = None) -> PropagationResult:
    """Same as :func:`propagate_amplitudes`, integrating the Bloch vector."""
    return _propagate(spec, config or PropagationConfig(), _dop853.BLOCH)


def transition_probability(spec: ModelSpec, config: PropagationConfig | None = None) -> float:
    return propagate_amplitudes(spec, config).final_probability


def _from_minus_infinity(order: float, u: float, odd_integrand: bool):
    """``int_{-inf}^u`` of ``cos(v**n)`` and ``sin(v**n)``.

    ``odd_integrand`` is true when ``v**n`` is odd in ``v`` (odd ``n``).
    """
    c_inf, s_inf = gen_fresnel_limit(order)
    sin_sign = -1.0 if odd_integrand else 1.0
    if math.isinf(u):
        c_u, s_u = (c_inf, s_inf)
    else:
        fv = gen_fresnel(order, abs(u))
        c_u, s_u = fv.cosine_part, fv.sine_part
    if u >= 0:
        return c_inf + c_u, sin_sign * s_inf + s_u
    return c_inf - c_u, sin_sign * (s_inf - s_u)


def weak_coupling_z_squared(spec: ModelSpec, tau: float) -> float:
    """First-order estimate of ``z(tau)**2`` for weak coupling.

    ``tau`` is the model's scaled time; it is mapped onto the variable of
    the Fresnel integrals via ``2 phi(tau) = u**(N+1)``.
    """
    n = spec.n_power
    order = n + 1
    u = tau / ((n + 1) / 2.0) ** (1.0 / (n + 1))
    ic, is_ = _from_minus_infinity(order, u, odd_integrand=order % 2 == 1)
    coeff = (2.0 ** n * (n + 1)) ** (2.0 / (n + 1))
    z2 = 1.0 - spec.alpha ** 2 * coeff * (ic * ic + is_ * is_)
    if z2 < 0:
        raise ValidityError(
            f"weak-coupling estimate went negative (z^2={z2:.3g}); alpha={spec.alpha} is too large")
    return z2


def weak_coupling_trajectory(spec: ModelSpec, taus: Sequence[float]) -> np.ndarray:
    return np.array([weak_coupling_z_squared(spec, t) for t in taus])
