import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SQRT2, SQRT3, mp_c_star, mp_density, mp_tail
from radgauss import DomainError
from radgauss.certifier import Interval, SplitRequired, enclose_density, enclose_tail
from radgauss.certifier import jet
from radgauss.certifier.claims import kkk_quartic, _kkk_coefficients
from radgauss.certifier.interval import tail_bounds

@st.composite
def intervals(draw, lo=-50.0, hi=50.0):
    a = draw(st.floats(lo, hi))
    b = draw(st.floats(lo, hi))
    return Interval(min(a, b), max(a, b))


@st.composite
def interval_and_point(draw, lo=-50.0, hi=50.0):
    iv = draw(intervals(lo, hi))
    t = draw(st.floats(0, 1))
    p = iv.lo + t * (iv.hi - iv.lo)
    return iv, min(max(p, iv.lo), iv.hi)


def _exact(op, *args):
    with mpmath.workdps(60):
        return op(*[mpmath.mpf(a) for a in args])


def _inside(iv, value):
    return mpmath.mpf(iv.lo) <= value <= mpmath.mpf(iv.hi)


@given(interval_and_point(), interval_and_point())
@settings(max_examples=400, deadline=None)
def test_arithmetic_containment(u, v):
    (a, p), (b, q) = u, v
    assert _inside(a + b, _exact(lambda x, y: x + y, p, q))
    assert _inside(a - b, _exact(lambda x, y: x - y, p, q))
    assert _inside(a * b, _exact(lambda x, y: x * y, p, q))
    assert _inside(-a, _exact(lambda x: -x, p))
    assert _inside(a.sqr(), _exact(lambda x: x * x, p))
    assert _inside(a**3, _exact(lambda x: x**3, p))
    if b.lo > 0 or b.hi < 0:
        assert _inside(a / b, _exact(lambda x, y: x / y, p, q))
    else:
        with pytest.raises(SplitRequired):
            a / b


@given(interval_and_point(0.0, 1e6))
@settings(max_examples=300, deadline=None)
def test_sqrt_containment(u):
    a, p = u
    assert _inside(a.sqrt(), _exact(mpmath.sqrt, p))


@given(interval_and_point(-700.0, 700.0))
@settings(max_examples=300, deadline=None)
def test_exp_containment(u):
    a, p = u
    assert _inside(a.exp(), _exact(mpmath.exp, p))


@given(interval_and_point(-40.0, 40.0))
@settings(max_examples=300, deadline=None)
def test_tail_and_density_containment(u):
    a, p = u
    assert _inside(enclose_tail(a), mp_tail(p, 60))
    assert _inside(enclose_density(a), mp_density(p, 60))


def test_invalid_intervals_raise():
    with pytest.raises(DomainError):
        Interval(1.0, 0.0)
    with pytest.raises(DomainError):
        Interval(math.nan)
    with pytest.raises(DomainError):
        Interval(-1.0, 1.0).sqrt()
    with pytest.raises(DomainError):
        Interval(1.0) + math.nan


def test_width_never_negative():
    iv = Interval(0.1, 0.3)
    for op in (iv + iv, iv * iv, iv - iv, iv.sqr(), iv.exp(), iv / iv):
        assert op.width >= 0


def test_enclose_tail_examples():
    zero = enclose_tail(Interval(0.0))
    assert 0.5 in zero and zero.width <= 1e-10
    s2 = enclose_tail(Interval(SQRT2))
    # contains 1 / (4 c*) at the float sqrt(2); the rigorous sqrt(2) enclosure also works
    assert _inside(enclose_tail(Interval(2.0).sqrt()), 1 / (4 * mp_c_star(60)))
    assert s2.width <= 1e-10
    box = enclose_tail(Interval(1.4, 1.5))
    assert box.lo <= float(mp_tail(1.5)) and box.hi >= float(mp_tail(1.4))
    assert abs(box.lo - float(mp_tail(1.5))) <= 1e-8
    assert abs(box.hi - float(mp_tail(1.4))) <= 1e-8


def test_point_enclosures_are_tight_and_valid():
    for k in range(-700, 701):
        y = k / 200
        lo, hi = tail_bounds(y)
        ref = mp_tail(y, 60)
        assert mpmath.mpf(lo) <= ref <= mpmath.mpf(hi)
        if abs(y) <= 3.5:
            assert hi - lo <= 1e-10
    for y in (3.6, 5.0, 8.0, 20.0, 37.0):
        lo, hi = tail_bounds(y)
        ref = mp_tail(y, 60)
        assert mpmath.mpf(lo) <= ref <= mpmath.mpf(hi)
        assert (hi - lo) <= 1e-12 * hi


def test_tail_bounds_extremes():
    assert tail_bounds(math.inf) == (0.0, 0.0)
    assert tail_bounds(-math.inf) == (1.0, 1.0)
    assert tail_bounds(100.0)[0] == 0.0


# -- jets ----------------------------------------------------------------------


def _g_mp(x, t):
    # at the ambient precision: mpmath.taylor raises it while differencing
    th = mpmath.sqrt(1 - t * t)
    r2 = mpmath.sqrt(2)
    return (mpmath.erfc((x - t) / th / r2) + mpmath.erfc((x + t) / th / r2)) / 2


@pytest.mark.parametrize("x", [SQRT3, 2.0, 3.0, 5.5])
def test_kkk_coefficients_match_closed_form_and_mpmath(x):
    g = _kkk_coefficients(Interval(x), Interval(0.0), 8)
    # even function: odd coefficients vanish, the tau^2 one too
    for k in (1, 2, 3, 5, 7):
        assert 0.0 in g[k]
    c4 = kkk_quartic(Interval(x))
    assert g[4].lo <= c4.hi and c4.lo <= g[4].hi
    closed = -float(mp_density(x)) * x * (x * x - 3) / 6
    assert c4.lo - 1e-15 <= closed <= c4.hi + 1e-15
    with mpmath.workdps(50):
        ref = mpmath.taylor(lambda t: _g_mp(mpmath.mpf(x), t), 0, 8)
    for k in range(1, 9):
        assert g[k].lo - 1e-12 <= float(ref[k]) <= g[k].hi + 1e-12, k


def test_interval_base_coefficients_enclose_the_range():
    x, t_hi = 2.0, 0.2
    g = _kkk_coefficients(Interval(x), Interval(0.0, t_hi), 8)
    for t in (0.0, 0.05, 0.13, 0.2):
        with mpmath.workdps(50):
            ref = mpmath.taylor(lambda s: _g_mp(mpmath.mpf(x), s), t, 8)
        for k in range(1, 9):
            assert g[k].lo <= float(ref[k]) <= g[k].hi


def test_jet_arithmetic_against_mpmath():
    n = 6
    t = jet.variable(Interval(0.3), n)
    f = jet.div(jet.exp(jet.mul(t, t)), jet.sqrt(jet.add(jet.constant(1.0, n), t)))
    with mpmath.workdps(40):
        ref = mpmath.taylor(lambda s: mpmath.exp(s * s) / mpmath.sqrt(1 + s), mpmath.mpf("0.3"), n)
    for k in range(n + 1):
        assert f[k].lo - 1e-13 <= float(ref[k]) <= f[k].hi + 1e-13
    d = jet.derivative(f)
    assert len(d) == n and d[0].lo - 1e-13 <= float(ref[1]) <= d[0].hi + 1e-13
    dens = jet.density(t)
    with mpmath.workdps(40):
        ref = mpmath.taylor(lambda s: mpmath.npdf(s), mpmath.mpf("0.3"), n)
    for k in range(n + 1):
        assert dens[k].lo - 1e-15 <= float(ref[k]) <= dens[k].hi + 1e-15
