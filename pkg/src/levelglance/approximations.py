"""Closed-form and semi-analytic transition probabilities.

Conventions: ``P`` is the nonadiabatic transition probability.  The DDP
expressions sum over the ``N`` zeros of the quasienergy in the upper half
plane, ``tau_k = alpha**(1/N) exp(i pi (2k-1) / 2N)``, each weighted by
``Gamma_k = (-1)**k``.

:func:`p_ddp_contour` rebuilds the same sum without the closed forms: the
phase integrals are done by quadrature along rays in the complex plane and
the weights come from the residue of the nonadiabatic coupling.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContourError, UnsupportedModelError
from .model import ModelSpec, adiabatic_energy, nonadiabatic_coupling
from .special import gamma_fn, nu_coefficient


@dataclass(frozen=True)
class ZeroPoint:
    index: int
    location: complex
    d_value: complex
    gamma_factor: int


@dataclass(frozen=True)
class DdpParameters:
    eta: float
    nu: float


def _require_even(spec: ModelSpec, what: str):
    if not spec.is_glancing:
        raise UnsupportedModelError(f"{what} is defined for even N only (got N={spec.n_power})")


def p_perturbative(spec: ModelSpec) -> float:
    """Weak-coupling (first-order) probability; grows without bound in alpha."""
    _require_even(spec, "p_perturbative")
    m = spec.n_power + 1
    coeff = ((2.0 / m) ** (2.0 * spec.n_power / m) * gamma_fn(1.0 / m) ** 2
             * math.cos(math.pi / (2 * m)) ** 2)
    return spec.alpha ** 2 * coeff


def p_magnus(spec: ModelSpec) -> float:
    return math.sin(math.sqrt(p_perturbative(spec))) ** 2


def p_lz_exact(alpha: float) -> float:
    return math.exp(-math.pi * alpha * alpha)


def p_rabi_limit(alpha: float) -> float:
    return math.sin(2.0 * alpha) ** 2


def ddp_parameters(spec: ModelSpec) -> DdpParameters:
    nu = nu_coefficient(spec.n_power)
    eta = 2.0 * nu * spec.alpha ** ((spec.n_power + 1.0) / spec.n_power)
    return DdpParameters(eta=eta, nu=nu)


def _angles(n: int) -> np.ndarray:
    k = np.arange(1, n + 1)
    return math.pi * (2 * k - 1) / (2 * n)


def ddp_zero_points(spec: ModelSpec) -> list[ZeroPoint]:
    n = spec.n_power
    radius = spec.alpha ** (1.0 / n)
    eta = ddp_parameters(spec).eta
    points = []
    for k, theta in enumerate(_angles(n), start=1):
        phase = cmath.exp(1j * theta)
        points.append(ZeroPoint(k, radius * phase, eta * phase, (-1) ** k))
    return points


def p_ddp_even(spec: ModelSpec) -> float:
    """All-zeros DDP sum for even N, folded into N/2 mirror pairs."""
    _require_even(spec, "p_ddp_even")
    eta = ddp_parameters(spec).eta
    theta = _angles(spec.n_power)[: spec.n_power // 2]
    signs = (-1.0) ** np.arange(1, spec.n_power // 2 + 1)
    total = np.sum(signs * np.exp(-eta * np.sin(theta)) * np.sin(eta * np.cos(theta)))
    return float(4.0 * total * total)


def p_ddp_odd(spec: ModelSpec) -> float:
    """All-zeros DDP sum for odd N.

    The purely imaginary zero enters with half the weight of a mirror pair,
    which is what the zero sum gives; it also makes ``N = 1`` reduce to
    Landau-Zener and ``alpha -> 0`` tend to 1.
    """
    if spec.is_glancing:
        raise UnsupportedModelError(f"p_ddp_odd is defined for odd N only (got N={spec.n_power})")
    if spec.n_power == 1:
        return p_lz_exact(spec.alpha)
    n = spec.n_power
    eta = ddp_parameters(spec).eta
    theta = _angles(n)[: (n - 1) // 2]
    signs = (-1.0) ** np.arange(1, (n - 1) // 2 + 1)
    total = np.sum(signs * np.exp(-eta * np.sin(theta)) * np.cos(eta * np.cos(theta)))
    total += 0.5 * (-1) ** ((n + 1) // 2) * math.exp(-eta)
    return float(4.0 * total * total)


def p_ddp(spec: ModelSpec) -> float:
    """Generalized DDP probability for any N."""
    return p_ddp_even(spec) if spec.is_glancing else p_ddp_odd(spec)


def p_ddp_single_pair(spec: ModelSpec) -> float:
    """Only the mirror pair of zeros nearest the real axis."""
    _require_even(spec, "p_ddp_single_pair")
    eta = ddp_parameters(spec).eta
    theta = math.pi / (2 * spec.n_power)
    return 4.0 * math.exp(-2.0 * eta * math.sin(theta)) * math.sin(eta * math.cos(theta)) ** 2


def p_ddp_single_pair_weak(spec: ModelSpec) -> float:
    """Small-alpha form of :func:`p_ddp_single_pair`.

    Scales as ``alpha**(2(N+1)/N)``, the power carried by ``eta**2``.
    """
    _require_even(spec, "p_ddp_single_pair_weak")
    n = spec.n_power
    ratio = gamma_fn((2 * n + 1) / (2 * n)) / gamma_fn((3 * n + 1) / (2 * n))
    return (4.0 * math.pi * spec.alpha ** (2.0 * (n + 1) / n) * ratio ** 2
            * math.cos(math.pi / (2 * n)) ** 2)


# ---------------------------------------------------------------------------
# numerical contour oracle

_GL_NODES = 160


def _ray_phase_integral(spec: ModelSpec, zero: complex, nodes: int) -> complex:
    """``2 * int_0^zero E(s) ds`` along the straight ray.

    With ``s = zero * (1 - v**2)`` the square-root endpoint becomes smooth.
    The square-root branch is followed by continuity from ``E(0) = alpha``.
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    v = 0.5 * (x + 1.0)
    w = 0.5 * w
    order = np.argsort(-v)          # walk from s = 0 towards the zero
    v, w = v[order], w[order]
    s = zero * (1.0 - v * v)
    e = adiabatic_energy(spec, s.astype(complex))
    prev = complex(spec.alpha)
    for j in range(e.size):
        if abs(e[j] - prev) > abs(-e[j] - prev):
            e[j] = -e[j]
        step = abs(cmath.phase(e[j] / prev)) if prev != 0 and e[j] != 0 else 0.0
        if step > math.pi / 4:
            raise ContourError(
                f"integrand argument jumped by {step:.3f} rad near s={s[j]:.6g}")
        prev = e[j]
    return 2.0 * complex(np.sum(w * e * zero * 2.0 * v))


def phase_integral(spec: ModelSpec, zero: complex) -> complex:
    d1 = _ray_phase_integral(spec, zero, _GL_NODES)
    d2 = _ray_phase_integral(spec, zero, 2 * _GL_NODES)
    if abs(d1 - d2) > 1e-11 * max(1.0, abs(d2)):
        raise ContourError(f"phase integral did not settle ({d1} vs {d2})")
    return d2


def residue_weight(spec: ModelSpec, zero: complex, eps: float = 1e-3,
                   levels: int = 4) -> complex:
    """``4i lim (t - t_c) gamma(t)`` by Richardson extrapolation in the offset."""
    def g(h):
        t = zero * (1.0 - h)
        return (t - zero) * nonadiabatic_coupling(spec, t)

    table = [g(eps / 2 ** j) for j in range(levels)]
    for order in range(1, levels):
        table = [(2 ** order * fine - coarse) / (2 ** order - 1)
                 for coarse, fine in zip(table[:-1], table[1:])]
    return 4j * table[0]


def p_ddp_contour(spec: ModelSpec) -> float:
    """Generalized DDP probability from numerically computed ingredients."""
    if spec.alpha == 0:
        # all zeros collapse onto the origin; the sum degenerates to its limit
        return 0.0 if spec.is_glancing else 1.0
    n = spec.n_power
    radius = spec.alpha ** (1.0 / n)
    total = 0j
    for theta in _angles(n):
        zero = radius * cmath.exp(1j * theta)
        d = phase_integral(spec, zero)
        total += residue_weight(spec, zero) * cmath.exp(1j * d)
    return abs(total) ** 2
