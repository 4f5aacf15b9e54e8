"""Gamma/Beta helpers and generalized Fresnel integrals.

``C_n(x) = int_0^x cos(s**n) ds`` and ``S_n(x) = int_0^x sin(s**n) ds``.
Up to the split point (where ``s**n`` reaches ``split_phase``) the integrals
are summed piecewise between consecutive zeros of ``cos(s**n)`` and
``sin(s**n)``.  Past it, the oscillatory remainder ``int_x^inf e^{i s^n} ds``
is evaluated on the contour rotated into the upper half plane, where the
integrand decays like ``e^{-t}`` instead of oscillating.  The closed-form
limits are never used inside :func:`gen_fresnel`, so comparing the two is a
genuine check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy import integrate

from .errors import DomainError

DEFAULT_SPLIT_PHASE = 40.0 * math.pi

_QUAD_OPTS = dict(epsabs=1e-15, epsrel=1e-13, limit=200)


def gamma_fn(x: float) -> float:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"gamma_fn needs a finite positive argument, got {x!r}")
    return math.gamma(x)


def beta_fn(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn needs positive arguments, got {x!r}, {y!r}")
    if x + y < 150.0:
        return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def nu_coefficient(n_power: int) -> float:
    """``B(1/2N, 3/2) / 2N``, equal to ``int_0^1 sqrt(1 - y**(2N)) dy``."""
    if n_power < 1:
        raise DomainError(f"n_power must be >= 1, got {n_power!r}")
    return beta_fn(1.0 / (2 * n_power), 1.5) / (2 * n_power)


@dataclass(frozen=True)
class FresnelValue:
    order: float
    tau: float
    cosine_part: float
    sine_part: float


def gen_fresnel_limit(order: float) -> tuple[float, float]:
    """Closed-form ``(C_n(inf), S_n(inf))``."""
    if not order > 1:
        raise DomainError(f"order must exceed 1, got {order!r}")
    amp = gamma_fn(1.0 / order) / order
    angle = math.pi / (2.0 * order)
    return amp * math.cos(angle), amp * math.sin(angle)


def fresnel_tail(order: float, x: float) -> complex:
    """Return ``int_x^inf exp(i s**n) ds`` for ``x > 0``.

    With ``w = s**n`` and ``w = W + i t`` the remainder becomes
    ``(i/n) e^{iW} int_0^inf e^{-t} (W + i t)^{1/n - 1} dt``.
    """
    if not order > 1:
        raise DomainError(f"order must exceed 1, got {order!r}")
    if not x > 0:
        raise DomainError(f"tail start must be positive, got {x!r}")
    if math.isinf(x):
        return 0j
    big_w = x ** order
    expo = 1.0 / order - 1.0

    def part(t, which):
        v = cmath.exp(-t) * (big_w + 1j * t) ** expo
        return v.real if which == 0 else v.imag

    re, _ = integrate.quad(part, 0.0, math.inf, args=(0,), **_QUAD_OPTS)
    im, _ = integrate.quad(part, 0.0, math.inf, args=(1,), **_QUAD_OPTS)
    return 1j / order * cmath.exp(1j * big_w) * complex(re, im)


def _direct(order: float, x: float) -> tuple[float, float]:
    # breakpoints at s**n = k*pi/2 are the zeros of cos and sin alternately
    edges = [0.0]
    k = 1
    while True:
        s = (k * math.pi / 2.0) ** (1.0 / order)
        if s >= x:
            break
        edges.append(s)
        k += 1
    edges.append(x)
    c_total = s_total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        c_total += integrate.quad(lambda s: math.cos(s ** order), a, b, **_QUAD_OPTS)[0]
        s_total += integrate.quad(lambda s: math.sin(s ** order), a, b, **_QUAD_OPTS)[0]
    return c_total, s_total


def gen_fresnel(order: float, tau: float,
                split_phase: float = DEFAULT_SPLIT_PHASE) -> FresnelValue:
    """Generalized Fresnel integrals ``(C_n(tau), S_n(tau))`` for ``tau >= 0``.

    ``tau = inf`` is accepted and returns the quadrature-plus-tail limit.
    """
    if not order > 1:
        raise DomainError(f"order must exceed 1, got {order!r}")
    if not tau >= 0:
        raise DomainError(f"tau must be >= 0, got {tau!r}")
    if tau == 0:
        return FresnelValue(order, 0.0, 0.0, 0.0)
    if tau ** order <= split_phase:
        c, s = _direct(order, tau)
        return FresnelValue(order, tau, c, s)
    x_split = split_phase ** (1.0 / order)
    c, s = _direct(order, x_split)
    rest = fresnel_tail(order, x_split) - fresnel_tail(order, tau)
    return FresnelValue(order, tau, c + rest.real, s + rest.imag)
