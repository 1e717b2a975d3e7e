"""Closed intervals with outward rounding, and rigorous Gaussian enclosures.

Every arithmetic result is widened by one ulp in each direction with
``math.nextafter``; ``exp`` is widened by two ulps (libm ``exp`` is
faithfully rounded, not correctly rounded).  ``sqrt`` and the four basic
operations are correctly rounded in IEEE arithmetic, so one ulp is enough.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ..errors import DomainError
from ..gaussian import CF_DEPTH, SERIES_CUTOFF

_INF = math.inf


def down(v: float) -> float:
    return math.nextafter(v, -_INF)


def up(v: float) -> float:
    return math.nextafter(v, _INF)


class SplitRequired(ArithmeticError):
    """Division by an interval that contains zero; the caller should bisect."""


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if not lo <= hi:  # also rejects NaN
            raise DomainError(f"invalid interval [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, v: float) -> "Interval":
        return cls(v, v)

    @classmethod
    def hull(cls, *items) -> "Interval":
        los, his = [], []
        for it in items:
            it = _coerce(it)
            los.append(it.lo)
            his.append(it.hi)
        return cls(min(los), max(his))

    # -- queries ---------------------------------------------------------
    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, v) -> bool:
        if isinstance(v, Interval):
            return self.lo <= v.lo and v.hi <= self.hi
        return self.lo <= v <= self.hi

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    # -- arithmetic ------------------------------------------------------
    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        o = _coerce(other)
        return _mk(down(self.lo + o.lo), up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        o = _coerce(other)
        return _mk(down(self.lo - o.hi), up(self.hi - o.lo))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = _coerce(other)
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0 and c >= 0:
            return _mk(down(a * c), up(b * d))
        p = (a * c, a * d, b * c, b * d)
        return _mk(down(min(p)), up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = _coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise SplitRequired(f"division by {o!r}")
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        p = (a / c, a / d, b / c, b / d)
        return _mk(down(min(p)), up(max(p)))

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other) / self

    def __pow__(self, k: int) -> "Interval":
        if not isinstance(k, int) or k < 0:
            raise DomainError("only nonnegative integer powers are supported")
        if k == 0:
            return Interval(1.0)
        if k == 1:
            return self
        if k % 2 == 0:
            return (self.sqr()) ** (k // 2)
        return self * (self ** (k - 1))

    def sqr(self) -> "Interval":
        a, b = self.lo, self.hi
        if a >= 0:
            return _mk(down(a * a), up(b * b))
        if b <= 0:
            return _mk(down(b * b), up(a * a))
        return _mk(0.0, up(max(a * a, b * b)))

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise DomainError(f"sqrt of {self!r}")
        return _mk(max(0.0, down(math.sqrt(self.lo))), up(math.sqrt(self.hi)))

    def exp(self) -> "Interval":
        lo = down(down(math.exp(self.lo))) if self.lo > -745.0 else 0.0
        return _mk(max(0.0, lo), up(up(math.exp(self.hi))) if self.hi < 709.0 else _INF)

    def max0(self, floor: float = 0.0) -> "Interval":
        """Intersect with [floor, inf); valid only when the true value is known >= floor."""
        return Interval(max(self.lo, floor), max(self.hi, floor))

    def maximum(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(max(self.lo, o.lo), max(self.hi, o.hi))

    def minimum(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(min(self.lo, o.lo), min(self.hi, o.hi))


def _mk(lo: float, hi: float) -> Interval:
    iv = Interval.__new__(Interval)
    if not lo <= hi:
        raise DomainError(f"invalid interval result [{lo!r}, {hi!r}]")
    iv.lo = lo
    iv.hi = hi
    return iv


def _coerce(v) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, int):
        f = float(v)
        if f == v:
            return _mk(f, f)
        return _mk(down(f), up(f))
    f = float(v)
    if math.isnan(f):
        raise DomainError("NaN operand")
    return _mk(f, f)


# -- rigorous constants ---------------------------------------------------
PI = Interval(math.pi, up(math.pi))  # math.pi < pi < nextafter(math.pi)
INV_SQRT_2PI = 1 / (2 * PI).sqrt()
SQRT2 = Interval(2.0).sqrt()
SQRT3 = Interval(3.0).sqrt()


def _exp_bounds(a_lo: float, a_hi: float) -> tuple[float, float]:
    lo = max(0.0, down(down(math.exp(a_lo)))) if a_lo > -745.0 else 0.0
    hi = up(up(math.exp(a_hi)))
    return lo, hi


def _density_bounds(y: float) -> tuple[float, float]:
    ay = abs(y)
    y2_lo, y2_hi = down(ay * ay), up(ay * ay)
    e_lo, e_hi = _exp_bounds(-0.5 * y2_hi, -0.5 * y2_lo)
    return max(0.0, down(e_lo * INV_SQRT_2PI.lo)), up(e_hi * INV_SQRT_2PI.hi)


def _series_bounds(y: float) -> tuple[float, float]:
    """Rigorous bounds on sum_k y^(2k+1)/(2k+1)!! for 0 <= y <= SERIES_CUTOFF."""
    y2_lo, y2_hi = down(y * y), up(y * y)
    t_lo = t_hi = y
    s_lo = s_hi = y
    k = 0
    while True:
        t_lo = down(down(t_lo * y2_lo) / (2 * k + 3))
        t_hi = up(up(t_hi * y2_hi) / (2 * k + 3))
        s_lo = down(s_lo + t_lo)
        s_hi = up(s_hi + t_hi)
        k += 1
        rho = up(y2_hi / (2 * k + 3))  # bounds every later term ratio
        if rho <= 0.5 and (t_hi <= 1e-18 * s_lo or t_hi <= 1e-300):
            # tail after the current term <= t * rho / (1 - rho) <= 2 * t * rho
            s_hi = up(s_hi + up(2.0 * up(t_hi * rho)))
            return s_lo, s_hi
        if y == 0.0:
            return 0.0, 0.0


def _mills_bounds(y: float) -> tuple[float, float]:
    """Rigorous bounds on I(y)/phi(y) for y > 0 by the Laplace continued fraction.

    With J_k = int_y^inf (t - y)^k phi(t) dt and r_k = J_k / J_{k-1} one has
    r_k = k / (y + r_{k+1}) and 0 < r_k < k / y, which seeds the backward sweep.
    """
    lo, hi = 0.0, up(CF_DEPTH / y)
    for k in range(CF_DEPTH - 1, 0, -1):
        lo, hi = down(k / up(y + hi)), up(k / down(y + lo))
    return down(1.0 / up(y + hi)), up(1.0 / down(y + lo))


@lru_cache(maxsize=1 << 18)
def tail_bounds(y: float) -> tuple[float, float]:
    """Rigorous (lo, hi) with lo <= I(y) <= hi for a float y."""
    if math.isnan(y):
        raise DomainError("NaN argument")
    if y == _INF:
        return 0.0, 0.0
    if y == -_INF:
        return 1.0, 1.0
    if y < 0:
        lo, hi = tail_bounds(-y)
        return max(0.0, down(1.0 - hi)), min(1.0, up(1.0 - lo))
    d_lo, d_hi = _density_bounds(y)
    if y <= SERIES_CUTOFF:
        s_lo, s_hi = _series_bounds(y)
        lo = down(0.5 - up(d_hi * s_hi))
        hi = up(0.5 - down(d_lo * s_lo))
    else:
        m_lo, m_hi = _mills_bounds(y)
        lo = down(d_lo * m_lo)
        hi = up(d_hi * m_hi)
    return max(0.0, lo), min(1.0, hi)


def enclose_tail(x: Interval) -> Interval:
    """Enclosure of {I(t) : t in x}; I is decreasing."""
    x = _coerce(x)
    lo, _ = tail_bounds(x.hi)
    _, hi = tail_bounds(x.lo)
    return _mk(lo, hi)


def enclose_density(x: Interval) -> Interval:
    """Enclosure of {phi(t) : t in x}."""
    x = _coerce(x)
    return (-(x.sqr()) * 0.5).exp() * INV_SQRT_2PI
