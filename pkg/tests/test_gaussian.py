import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SQRT2, SQRT3, mp_c_star, mp_density, mp_tail
from radgauss import DomainError, constants, normal_density, normal_tail, optimal_constant


@pytest.mark.parametrize(
    "x, expected",
    [
        (0.0, 0.5),
        (1.0, 0.15865525393145705),
        (0.5, 0.3085375387259869),
        (SQRT3, 0.0416322583317752),
    ],
)
def test_normal_tail_reference_values(x, expected):
    assert normal_tail(x) == pytest.approx(expected, rel=1e-14, abs=1e-16)


def test_normal_tail_matches_mpmath_on_a_dense_grid():
    xs = np.linspace(-8, 37, 4501)
    got = normal_tail(xs)
    for x, g in zip(xs.tolist(), got.tolist()):
        ref = float(mp_tail(x))
        assert abs(g - ref) <= 1e-15 + 4e-15 * ref, x


@given(st.floats(-30, 30, allow_nan=False))
@settings(max_examples=300, deadline=None)
def test_tail_reflection(x):
    assert normal_tail(x) + normal_tail(-x) == pytest.approx(1.0, abs=2e-16)


@given(st.floats(-10, 10), st.floats(-10, 10))
@settings(max_examples=300, deadline=None)
def test_tail_is_monotone(a, b):
    lo, hi = min(a, b), max(a, b)
    assert normal_tail(lo) >= normal_tail(hi)


def test_scalar_and_array_paths_agree():
    # numpy's exp is not libm's exp, so agreement is to a few ulps, not bitwise
    xs = np.linspace(-6, 12, 181)
    arr = normal_tail(xs)
    dens = normal_density(xs)
    for i, x in enumerate(xs.tolist()):
        assert arr[i] == pytest.approx(normal_tail(x), rel=1e-15, abs=4e-16)
        assert dens[i] == pytest.approx(normal_density(x), rel=1e-15, abs=1e-300)


def test_density_matches_mpmath():
    for x in np.linspace(-20, 20, 801).tolist():
        ref = float(mp_density(x))
        assert abs(normal_density(x) - ref) <= 1e-15 * ref + 1e-300


def test_nonfinite_arguments_are_rejected():
    with pytest.raises(DomainError):
        normal_tail(float("nan"))
    with pytest.raises(DomainError):
        normal_density(float("inf"))


def test_optimal_constant():
    assert optimal_constant() == pytest.approx(float(mp_c_star()), rel=1e-15)
    assert 4 * optimal_constant() * normal_tail(SQRT2) == pytest.approx(1.0, abs=1e-15)


def test_constants_against_high_precision():
    c = constants()
    cs = mp_c_star()
    t3, p3 = mp_tail(SQRT3), mp_density(SQRT3)
    assert c.c_star == pytest.approx(3.178655565886997, rel=1e-14)
    assert c.tau_L == pytest.approx(float((cs - 1) * t3 / 0.56), rel=1e-12)
    assert c.q_alpha == pytest.approx(0.5659027568237835, rel=1e-12)
    assert c.q_beta == pytest.approx(1.6758477615527793, rel=1e-12)
    assert c.q_gamma == pytest.approx(0.45842053508518717, rel=1e-12)
    assert c.q_alpha == pytest.approx(float(2 * cs * p3), rel=1e-12)
    assert c.tau_star == pytest.approx((3 - 2 * SQRT2) * SQRT3, rel=1e-15)
    assert c.c_pinelis_asym == 14.10


def test_constants_follow_c_L():
    assert constants(0.28).tau_L == pytest.approx(2 * constants(0.56).tau_L, rel=1e-15)
    with pytest.raises(DomainError):
        constants(0.0)
    with pytest.raises(DomainError):
        constants(math.inf)


def test_constants_as_dict_round_trip():
    d = constants().as_dict()
    assert set(d) == {"c_star", "c_L", "tau_L", "q_alpha", "q_beta", "q_gamma", "c_pinelis_asym", "tau_star"}
