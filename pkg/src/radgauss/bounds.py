"""Closed-form tail bounds for normalized Rademacher sums, and the
two-point Chebyshev inequalities checked against exact distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import ArgumentError, DomainError
from .exact import RatioReport, Support, WeightVector, atom_support, normalize, ratio
from .gaussian import PINELIS_ASYMPTOTIC_C, normal_tail, optimal_constant


class BoundKind(Enum):
    GAUSSIAN_OPTIMAL = "gaussian_optimal"
    SYMMETRY_CHEBYSHEV = "symmetry_chebyshev"
    HOEFFDING = "hoeffding"
    BERRY_ESSEEN = "berry_esseen"
    PINELIS_ASYMPTOTIC = "pinelis_asymptotic"


@dataclass(frozen=True)
class PriorConstant:
    """Earlier constant c in P{S_n >= x} <= c I(x); a data row only."""

    name: str
    c: float


def prior_constants() -> tuple[PriorConstant, ...]:
    c_star = optimal_constant()
    return (
        PriorConstant("prior_pinelis2007", 1.01 * c_star),
        PriorConstant("prior_bentkus2007", 4.00),
        PriorConstant("prior_pinelis1994", 4.46),
        PriorConstant("prior_bgh2001", 12.01),
    )


Kind = Union[BoundKind, PriorConstant]

# Bounds that are proven upper bounds for every normalized weight vector.
# The asymptotic comparison row is shown but never treated as verified.
_VALID = frozenset(
    {
        BoundKind.GAUSSIAN_OPTIMAL,
        BoundKind.SYMMETRY_CHEBYSHEV,
        BoundKind.HOEFFDING,
        BoundKind.BERRY_ESSEEN,
    }
)


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


def bound(kind: Kind, x: float, tau: float | None = None, c_L: float = 0.56) -> float:
    """Upper bound on P{S_n >= x} of the given kind, clamped to [0, 1]."""
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if kind is BoundKind.BERRY_ESSEEN:
        if tau is None:
            raise ArgumentError("the Berry-Esseen bound needs tau")
        if not (0.0 < tau <= 1.0):
            raise DomainError(f"tau must lie in (0, 1], got {tau!r}")
    elif tau is not None:
        raise ArgumentError(f"{kind} does not take tau")

    if isinstance(kind, PriorConstant):
        return _clamp(kind.c * normal_tail(x))
    if kind is BoundKind.GAUSSIAN_OPTIMAL:
        return _clamp(optimal_constant() * normal_tail(x))
    if kind is BoundKind.SYMMETRY_CHEBYSHEV:
        if x <= 0:
            return 1.0
        x2 = x * x
        return 0.5 if x2 <= 1.0 else 0.5 / x2
    if kind is BoundKind.HOEFFDING:
        # exp(-x^2/2) bounds the tail only for x >= 0
        return 1.0 if x <= 0 else _clamp(math.exp(-0.5 * x * x))
    if kind is BoundKind.BERRY_ESSEEN:
        return _clamp(normal_tail(x) + c_L * tau)
    if kind is BoundKind.PINELIS_ASYMPTOTIC:
        if x <= 0:
            return 1.0
        return _clamp(normal_tail(x) * (1.0 + PINELIS_ASYMPTOTIC_C / x))
    raise ArgumentError(f"unknown bound kind {kind!r}")


def kind_name(kind: Kind) -> str:
    return kind.name if isinstance(kind, PriorConstant) else kind.value


def all_kinds() -> list[Kind]:
    return [*BoundKind, *prior_constants()]


def bound_table(x: float, tau: float, c_L: float = 0.56) -> tuple[dict[str, float], tuple[str, ...]]:
    """Every bound at (x, tau); returns (name -> value, names of valid bounds)."""
    table: dict[str, float] = {}
    valid: list[str] = []
    for kind in all_kinds():
        t = tau if kind is BoundKind.BERRY_ESSEEN else None
        name = kind_name(kind)
        table[name] = bound(kind, x, t, c_L=c_L)
        # every prior constant is >= c*, so those rows are valid too
        if isinstance(kind, PriorConstant) or kind in _VALID:
            valid.append(name)
    return table, tuple(valid)


def compare_all(w, x: float, c_L: float = 0.56) -> RatioReport:
    return ratio(w, x, c_L=c_L)


def _tail_from_support(sup: Support, t: float, eps: float, absolute: bool = False) -> float:
    vals = np.abs(sup.values) if absolute else sup.values
    return float(np.sum(sup.counts[vals >= t - eps])) / float(2**sup.n)


def _moment(sup: Support, s: float) -> float:
    return float(np.dot(sup.probs, np.abs(sup.values) ** s))


def verify_two_point(w, s: float, a: float, b: float, absolute: bool = False) -> float:
    """Slack in the two-point Chebyshev inequality for Y = S_n.

    Symmetric form:  E|Y|^s / 2 - [a^s P{Y >= a} + (b^s - a^s) P{Y >= b}].
    With ``absolute=True`` the general form is used instead:
    E|Y|^s - [a^s P{|Y| >= a} + (b^s - a^s) P{|Y| >= b}].
    A valid inequality gives slack >= 0 (up to rounding).
    """
    if not (s > 0 and math.isfinite(s)):
        raise ArgumentError(f"s must be positive, got {s!r}")
    if a < 0 or a > b:
        raise ArgumentError(f"need 0 <= a <= b, got a={a!r}, b={b!r}")
    w = w if isinstance(w, WeightVector) else normalize(w)
    sup = atom_support(w)
    eps = w.tie_eps()
    pa = _tail_from_support(sup, a, eps, absolute)
    pb = _tail_from_support(sup, b, eps, absolute)
    lhs = a**s * pa + (b**s - a**s) * pb
    moment = _moment(sup, s)
    return (moment if absolute else 0.5 * moment) - lhs


def chebyshev_chain(w, k_max: int) -> tuple[float, float]:
    """(sum_{k<=k_max} P{S_n >= sqrt k}, 1/2 - sum)."""
    if k_max < 1:
        raise ArgumentError("k_max must be >= 1")
    w = w if isinstance(w, WeightVector) else normalize(w)
    sup = atom_support(w)
    eps = w.tie_eps()
    top = float(sup.values[-1])
    total = 0.0
    for k in range(1, k_max + 1):
        t = math.sqrt(k)
        if t - eps > top:
            break
        total += _tail_from_support(sup, t, eps)
    return total, 0.5 - total
