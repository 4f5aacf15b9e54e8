import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelglance import (ModelSpec, UnsupportedModelError, ddp_parameters, ddp_zero_points,
                         p_ddp, p_ddp_contour, p_ddp_even, p_ddp_odd, p_ddp_single_pair,
                         p_ddp_single_pair_weak, p_lz_exact, p_magnus, p_perturbative,
                         p_rabi_limit)
from levelglance.approximations import phase_integral, residue_weight

ALPHAS = (0.3, 0.68, 1.0, 2.0, 4.0)


def first_order_oracle(n, alpha):
    """alpha^2 |int exp(2i tau^(N+1)/(N+1)) dtau|^2 over the real line, by mpmath."""
    mpmath.mp.dps = 25
    m = n + 1
    k = 2.0 / m
    # even integrand in tau for odd m, so twice the half-line
    f = lambda t: mpmath.exp(1j * k * t ** m)
    zeros = lambda j: (j * mpmath.pi / k) ** (1.0 / m)
    half = mpmath.quadosc(f, [0, mpmath.inf], zeros=zeros)
    return alpha ** 2 * abs(2 * half.real) ** 2


@pytest.mark.parametrize("n", [2, 4, 6])
def test_perturbative_matches_first_order_integral(n):
    assert p_perturbative(ModelSpec(n, 0.01)) == pytest.approx(first_order_oracle(n, 0.01),
                                                               rel=1e-10)


def test_perturbative_value():
    expected = float((mpmath.mpf(2) / 3) ** (mpmath.mpf(4) / 3) * mpmath.gamma(mpmath.mpf(1) / 3) ** 2
                     * mpmath.cos(mpmath.pi / 6) ** 2) * 1e-4
    assert p_perturbative(ModelSpec(2, 0.01)) == pytest.approx(expected, rel=1e-13)
    assert p_perturbative(ModelSpec(2, 0.01)) == pytest.approx(3.134718e-4, rel=1e-6)


def test_perturbative_coefficient_tends_to_four():
    # approached from above, slowly (the gap shrinks roughly like log(N)/N)
    gaps = [p_perturbative(ModelSpec(n, 1.0)) - 4 for n in (10, 100, 400, 10**4, 10**6)]
    assert all(0 < b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 2e-4
    assert gaps[2] == pytest.approx(0.0953342, abs=1e-6)


def test_magnus_value():
    spec = ModelSpec(2, 0.01)
    assert p_magnus(spec) == pytest.approx(math.sin(math.sqrt(p_perturbative(spec))) ** 2, rel=1e-15)
    x = p_perturbative(spec)
    assert p_magnus(spec) == pytest.approx(x - x ** 2 / 3 + 2 * x ** 3 / 45, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 4, 6, 16]), st.floats(0.0, 50.0))
def test_magnus_bounded(n, alpha):
    assert 0.0 <= p_magnus(ModelSpec(n, alpha)) <= 1.0


def test_even_only_methods():
    for fn in (p_perturbative, p_magnus, p_ddp_even, p_ddp_single_pair, p_ddp_single_pair_weak):
        with pytest.raises(UnsupportedModelError):
            fn(ModelSpec(3, 1.0))
    with pytest.raises(UnsupportedModelError):
        p_ddp_odd(ModelSpec(2, 1.0))


def test_lz_and_rabi_values():
    assert p_lz_exact(1.0) == pytest.approx(0.0432139, abs=1e-7)
    assert p_lz_exact(0.5) == pytest.approx(0.4559381, abs=1e-7)
    assert p_rabi_limit(0.5) == pytest.approx(0.7080734, abs=1e-7)


def test_ddp_parameters():
    assert ddp_parameters(ModelSpec(2, 1.0)).eta == pytest.approx(1.7480384, abs=1e-7)
    assert ddp_parameters(ModelSpec(2, 0.0)).eta == 0.0
    assert ddp_parameters(ModelSpec(1, 1.0)).eta == pytest.approx(math.pi / 2, rel=1e-14)


def test_zero_points_layout():
    pts = ddp_zero_points(ModelSpec(4, 16.0))
    assert [p.index for p in pts] == [1, 2, 3, 4]
    for p, k in zip(pts, range(1, 5)):
        assert abs(p.location) == pytest.approx(2.0, rel=1e-14)
        assert cmath.phase(p.location) == pytest.approx((2 * k - 1) * math.pi / 8, rel=1e-14)
        assert p.gamma_factor == (-1) ** k


@pytest.mark.parametrize("n", [1, 2, 3, 6, 11])
@pytest.mark.parametrize("alpha", [0.3, 1.0, 7.0])
def test_zero_points_are_zeros(n, alpha):
    pts = ddp_zero_points(ModelSpec(n, alpha))
    locs = sorted((p.location for p in pts), key=lambda z: z.real)
    for z in locs:
        assert abs(alpha ** 2 + z ** (2 * n)) <= 1e-10 * alpha ** 2
        assert z.imag > 0
    for a, b in zip(locs, reversed(locs)):
        assert a == pytest.approx(-b.conjugate(), abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_value_by_quadrature(n):
    spec = ModelSpec(n, 1.3)
    for pt in ddp_zero_points(spec):
        assert phase_integral(spec, pt.location) == pytest.approx(pt.d_value, abs=1e-11)


@pytest.mark.parametrize("n", [2, 4, 5])
def test_residue_weights_alternate(n):
    spec = ModelSpec(n, 0.8)
    w = [residue_weight(spec, p.location) for p in ddp_zero_points(spec)]
    for k, wk in enumerate(w, start=1):
        # the overall sign cancels in |sum|^2; only the alternation matters
        assert wk == pytest.approx(-(-1) ** k, abs=1e-10)


def test_ddp_even_value():
    eta = 2 * float(mpmath.beta(0.25, 1.5)) / 4
    c = math.cos(math.pi / 4)
    expected = 4 * math.exp(-2 * eta * c) * math.sin(eta * c) ** 2
    assert p_ddp_even(ModelSpec(2, 1.0)) == pytest.approx(expected, rel=1e-13)
    assert p_ddp_even(ModelSpec(2, 1.0)) == pytest.approx(0.3011888, abs=1e-7)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 10.0))
def test_n2_single_pair_is_everything(alpha):
    spec = ModelSpec(2, alpha)
    assert p_ddp_even(spec) == pytest.approx(p_ddp_single_pair(spec), rel=1e-14, abs=1e-300)


def test_single_pair_differs_for_more_zeros():
    spec = ModelSpec(6, 2.0)
    assert abs(p_ddp_single_pair(spec) - p_ddp_even(spec)) > 1e-3


def test_ddp_odd_limits():
    assert p_ddp_odd(ModelSpec(3, 0.0)) == pytest.approx(1.0, abs=1e-15)
    assert p_ddp_odd(ModelSpec(5, 0.0)) == pytest.approx(1.0, abs=1e-15)
    assert p_ddp_odd(ModelSpec(3, 40.0)) < 1e-20
    assert p_ddp_odd(ModelSpec(1, 0.7)) == pytest.approx(p_lz_exact(0.7), rel=1e-15)
    assert p_ddp(ModelSpec(3, 1.0)) == pytest.approx(0.0279362, abs=1e-7)


def test_ddp_even_zero_coupling():
    assert p_ddp(ModelSpec(4, 0.0)) == 0.0
    assert p_ddp_contour(ModelSpec(4, 0.0)) == 0.0
    assert p_ddp_contour(ModelSpec(3, 0.0)) == 1.0


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 10])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_contour_oracle_equivalence(n, alpha):
    spec = ModelSpec(n, alpha)
    assert abs(p_ddp_contour(spec) - p_ddp(spec)) <= 1e-8


@pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1.5, 2.0])
def test_contour_lz_exact(alpha):
    assert abs(p_ddp_contour(ModelSpec(1, alpha)) - p_lz_exact(alpha)) <= 1e-8


def test_rabi_limit_large_n():
    grid = np.round(np.arange(0, 101) * 0.01, 10)
    dev = max(abs(p_ddp_even(ModelSpec(80, a)) - p_rabi_limit(a)) for a in grid)
    assert dev <= 0.05


def test_single_pair_weak_matches_taylor():
    spec = ModelSpec(2, 0.01)
    eta = ddp_parameters(spec).eta
    taylor = 4 * eta ** 2 * math.cos(math.pi / 4) ** 2
    assert p_ddp_single_pair_weak(spec) == pytest.approx(taylor, rel=1e-2)
    assert p_ddp_single_pair_weak(spec) == pytest.approx(p_ddp_single_pair(spec), rel=1e-2)


def test_single_pair_weak_large_n_limit():
    # 4 pi alpha^2 / Gamma(3/2)^2 = 16 alpha^2 as N grows
    assert p_ddp_single_pair_weak(ModelSpec(10**6, 0.01)) == pytest.approx(16e-4, rel=1e-4)
    assert p_ddp_single_pair_weak(ModelSpec(400, 0.01)) == pytest.approx(1.5612e-3, rel=1e-4)


@pytest.mark.parametrize("n", [2, 4, 6, 10])
def test_single_pair_log_slope(n):
    a1, a2 = 1e-5, 2e-5
    p1 = p_ddp_single_pair(ModelSpec(n, a1))
    p2 = p_ddp_single_pair(ModelSpec(n, a2))
    slope = math.log(p2 / p1) / math.log(a2 / a1)
    assert slope == pytest.approx(2 * (n + 1) / n, abs=1e-3)
