"""Truncated Taylor series with interval coefficients.

A jet ``[c0, c1, ..., cN]`` stands for c0 + c1 s + ... + cN s^N.  When the
expansion point is itself an interval T, coefficient k of f(T + s)
encloses f^(k)(t)/k! for every t in T; that is how Lagrange remainders
are bounded.
"""

from __future__ import annotations

from .interval import INV_SQRT_2PI, Interval, _coerce

Jet = list  # list[Interval]


def variable(base: Interval, order: int) -> Jet:
    return [base, Interval(1.0)] + [Interval(0.0)] * (order - 1)


def constant(v, order: int) -> Jet:
    return [_coerce(v)] + [Interval(0.0)] * order


def add(a: Jet, b: Jet) -> Jet:
    return [x + y for x, y in zip(a, b)]


def sub(a: Jet, b: Jet) -> Jet:
    return [x - y for x, y in zip(a, b)]


def scale(a: Jet, c) -> Jet:
    c = _coerce(c)
    return [x * c for x in a]


def mul(a: Jet, b: Jet) -> Jet:
    n = min(len(a), len(b))
    out = []
    for k in range(n):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out.append(acc)
    return out


def div(a: Jet, b: Jet) -> Jet:
    n = min(len(a), len(b))
    q: Jet = []
    for k in range(n):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * q[k - j]
        q.append(acc / b[0])
    return q


def sqrt(a: Jet) -> Jet:
    s0 = a[0].sqrt()
    two_s0 = s0 * 2
    s = [s0]
    for k in range(1, len(a)):
        acc = a[k]
        for j in range(1, k):
            acc = acc - s[j] * s[k - j]
        s.append(acc / two_s0)
    return s


def exp(a: Jet) -> Jet:
    e = [a[0].exp()]
    for k in range(1, len(a)):
        acc = a[1] * e[k - 1]
        for j in range(2, k + 1):
            acc = acc + a[j] * e[k - j] * j
        e.append(acc / k)
    return e


def derivative(a: Jet) -> Jet:
    return [a[k] * k for k in range(1, len(a))]


def density(a: Jet) -> Jet:
    """Jet of phi(a(s))."""
    return scale(exp(scale(mul(a, a), -0.5)), INV_SQRT_2PI)
