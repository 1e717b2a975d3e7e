"""Standard normal tail and density, and the named constants built from them.

``normal_tail`` uses the positive-term series

    Phi(x) - 1/2 = phi(x) * sum_k x^(2k+1) / (2k+1)!!

for ``|x| <= 3.5`` and the Laplace continued fraction for the Mills ratio
beyond.  Both accept scalars or numpy arrays.  The certifier reuses the
same two expansions with directed rounding (``certifier.interval``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SERIES_CUTOFF = 3.5
CF_DEPTH = 50
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Literature constant for the asymptotic comparison bound I(x)(1 + C/x).
PINELIS_ASYMPTOTIC_C = 14.10

_SPLITTER = 134217729.0  # 2**27 + 1


def _check_finite(x) -> None:
    if not np.all(np.isfinite(x)):
        raise DomainError(f"expected a finite argument, got {x!r}")


def _square_split(x):
    """Return (s, e) with s + e == x*x exactly (Veltkamp/Dekker)."""
    c = _SPLITTER * x
    hi = c - (c - x)
    lo = x - hi
    s = x * x
    e = ((hi * hi - s) + 2.0 * hi * lo) + lo * lo
    return s, e


def _density_scalar(x: float) -> float:
    if abs(x) > 40.0:
        return 0.0
    s, e = _square_split(x)
    return INV_SQRT_2PI * math.exp(-0.5 * s) * (1.0 - 0.5 * e)


def _upper_tail_scalar(x: float) -> float:
    # x >= 0
    if x <= SERIES_CUTOFF:
        x2 = x * x
        term = x
        total = x
        k = 0
        while term > 1e-17 * total:
            term *= x2 / (2 * k + 3)
            total += term
            k += 1
        return 0.5 - _density_scalar(x) * total
    r = 0.0
    for k in range(CF_DEPTH, 0, -1):
        r = k / (x + r)
    return _density_scalar(x) / (x + r)


def _density_array(x: np.ndarray) -> np.ndarray:
    s, e = _square_split(x)
    with np.errstate(under="ignore"):
        out = INV_SQRT_2PI * np.exp(-0.5 * s) * (1.0 - 0.5 * e)
    return np.where(np.abs(x) > 40.0, 0.0, out)


def _upper_tail_array(x: np.ndarray) -> np.ndarray:
    # x >= 0 elementwise
    out = np.empty_like(x)
    small = x <= SERIES_CUTOFF
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs.copy()
        total = xs.copy()
        for k in range(60):
            term = term * x2 / (2 * k + 3)
            total = total + term
        out[small] = 0.5 - _density_array(xs) * total
    big = ~small
    if np.any(big):
        xb = x[big]
        r = np.zeros_like(xb)
        for k in range(CF_DEPTH, 0, -1):
            r = k / (xb + r)
        out[big] = _density_array(xb) / (xb + r)
    return out


def normal_tail(x):
    """P{eta >= x} for a standard normal eta.

    Absolute error is below 1e-15 on the whole line; relative error stays
    near machine precision for x > 0, which is what ratio computations need.
    """
    _check_finite(x)
    if np.ndim(x) == 0:
        x = float(x)
        if x >= 0.0:
            return _upper_tail_scalar(x)
        return 1.0 - _upper_tail_scalar(-x)
    x = np.asarray(x, dtype=float)
    up = _upper_tail_array(np.abs(x))
    return np.where(x >= 0.0, up, 1.0 - up)


def normal_density(x):
    """Standard normal density, relative error below 1e-14."""
    _check_finite(x)
    if np.ndim(x) == 0:
        return _density_scalar(float(x))
    return _density_array(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Constants:
    c_star: float
    c_L: float
    tau_L: float
    q_alpha: float
    q_beta: float
    q_gamma: float
    c_pinelis_asym: float
    tau_star: float

    def as_dict(self) -> dict:
        return {
            "c_star": self.c_star,
            "c_L": self.c_L,
            "tau_L": self.tau_L,
            "q_alpha": self.q_alpha,
            "q_beta": self.q_beta,
            "q_gamma": self.q_gamma,
            "c_pinelis_asym": self.c_pinelis_asym,
            "tau_star": self.tau_star,
        }


def optimal_constant() -> float:
    """c* = 1 / (4 I(sqrt 2))."""
    return 1.0 / (4.0 * normal_tail(math.sqrt(2.0)))


def constants(c_L: float = 0.56) -> Constants:
    """All named constants, computed from the Gaussian primitives.

    ``c_L`` is the Berry-Esseen constant that fixes ``tau_L``; any value in
    (0, 1) is accepted.
    """
    if not (math.isfinite(c_L) and c_L > 0):
        raise DomainError(f"c_L must be positive and finite, got {c_L!r}")
    r3 = math.sqrt(3.0)
    c_star = optimal_constant()
    tail3 = normal_tail(r3)
    dens3 = normal_density(r3)
    return Constants(
        c_star=c_star,
        c_L=c_L,
        tau_L=(c_star - 1.0) * tail3 / c_L,
        q_alpha=2.0 * c_star * dens3,
        q_beta=6.0 * r3 * c_star * dens3 - 2.0 * c_star * tail3 - 1.0,
        q_gamma=2.0 * r3 * c_star * tail3,
        c_pinelis_asym=PINELIS_ASYMPTOTIC_C,
        tau_star=(3.0 - 2.0 * math.sqrt(2.0)) * r3,
    )
