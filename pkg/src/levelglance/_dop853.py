"""Compiled Dormand-Prince 8(5,3) stepper for the rotating-frame equations.

The Butcher tableau and error weights are taken from scipy's DOP853
implementation; stepping and error control follow the same scheme but run
under numba, since a pure-python loop is roughly a thousand times slower
for these small systems.
"""
import math

import numba
import numpy as np
from scipy.integrate._ivp import dop853_coefficients as _coef

_A = np.ascontiguousarray(_coef.A[:_coef.N_STAGES, :_coef.N_STAGES])
_B = np.ascontiguousarray(_coef.B)
_C = np.ascontiguousarray(_coef.C[:_coef.N_STAGES])
_E3 = np.ascontiguousarray(_coef.E3)
_E5 = np.ascontiguousarray(_coef.E5)
N_STAGES = _coef.N_STAGES

AMPLITUDES = 0
BLOCH = 1

OK = 0
STEP_UNDERFLOW = 1
NOT_FINITE = 2
TOO_MANY_STEPS = 3

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0


@numba.njit(cache=True)
def _rhs(kind, t, y, n, alpha, out):
    two_phi = 2.0 * t ** (n + 1) / (n + 1)
    c = math.cos(two_phi)
    s = math.sin(two_phi)
    if kind == AMPLITUDES:
        # i dc1/dt = alpha e^{-2i phi} c2,  i dc2/dt = alpha e^{+2i phi} c1
        r1, i1, r2, i2 = y[0], y[1], y[2], y[3]
        ar = c * r2 + s * i2
        ai = c * i2 - s * r2
        br = c * r1 - s * i1
        bi = c * i1 + s * r1
        out[0] = alpha * ai
        out[1] = -alpha * ar
        out[2] = alpha * bi
        out[3] = -alpha * br
    else:
        x, yy, z = y[0], y[1], y[2]
        out[0] = 2.0 * alpha * s * z
        out[1] = -2.0 * alpha * c * z
        out[2] = 2.0 * alpha * (c * yy - s * x)


@numba.njit(cache=True)
def integrate(kind, n, alpha, t0, y0, tout, rtol, atol, max_steps):
    """Integrate from ``t0`` through the increasing times ``tout``.

    Returns ``(states, status, steps, drift)`` where ``drift`` is the largest
    ``| |y|^2 - 1 |`` seen on accepted steps.
    """
    m = y0.shape[0]
    y = y0.copy()
    K = np.zeros((N_STAGES + 1, m))
    f = np.zeros(m)
    tmp = np.zeros(m)
    ynew = np.zeros(m)
    states = np.zeros((tout.shape[0], m))
    t = t0
    _rhs(kind, t, y, n, alpha, f)
    h = 0.01 / (1.0 + abs(t0) ** n + alpha)
    steps = 0
    drift = 0.0
    for j in range(tout.shape[0]):
        t_end = tout[j]
        while t < t_end:
            hh = min(h, t_end - t)
            last = hh == t_end - t
            while True:
                if hh < 1e-14 * max(1.0, abs(t)):
                    states[j:, :] = np.nan
                    return states, STEP_UNDERFLOW, steps, drift
                K[0, :] = f
                for st in range(1, N_STAGES):
                    for q in range(m):
                        acc = 0.0
                        for r in range(st):
                            acc += _A[st, r] * K[r, q]
                        tmp[q] = y[q] + hh * acc
                    _rhs(kind, t + _C[st] * hh, tmp, n, alpha, K[st])
                for q in range(m):
                    acc = 0.0
                    for r in range(N_STAGES):
                        acc += _B[r] * K[r, q]
                    ynew[q] = y[q] + hh * acc
                _rhs(kind, t + hh, ynew, n, alpha, K[N_STAGES])
                e5 = 0.0
                e3 = 0.0
                for q in range(m):
                    sc = atol + rtol * max(abs(y[q]), abs(ynew[q]))
                    a5 = 0.0
                    a3 = 0.0
                    for r in range(N_STAGES + 1):
                        a5 += _E5[r] * K[r, q]
                        a3 += _E3[r] * K[r, q]
                    e5 += (a5 / sc) ** 2
                    e3 += (a3 / sc) ** 2
                if e5 == 0.0 and e3 == 0.0:
                    err = 0.0
                else:
                    err = hh * e5 / math.sqrt((e5 + 0.01 * e3) * m)
                if not math.isfinite(err):
                    states[j:, :] = np.nan
                    return states, NOT_FINITE, steps, drift
                if err < 1.0:
                    if err == 0.0:
                        factor = MAX_FACTOR
                    else:
                        factor = min(MAX_FACTOR, SAFETY * err ** (-1.0 / 8.0))
                    t = t_end if last else t + hh
                    y[:] = ynew
                    f[:] = K[N_STAGES]
                    steps += 1
                    norm2 = 0.0
                    for q in range(m):
                        norm2 += y[q] * y[q]
                    drift = max(drift, abs(norm2 - 1.0))
                    if last:
                        # a clipped step says nothing about the natural size
                        h = max(h, hh * factor)
                    else:
                        h = hh * factor
                    break
                hh *= max(MIN_FACTOR, SAFETY * err ** (-1.0 / 8.0))
                last = False
            if steps > max_steps:
                states[j:, :] = np.nan
                return states, TOO_MANY_STEPS, steps, drift
        states[j, :] = y
    return states, OK, steps, drift
