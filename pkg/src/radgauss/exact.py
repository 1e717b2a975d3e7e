"""Exact distribution of S_n = sum_i a_i eps_i for fixed weights.

Counting is done on integer atom counts over 2**n.  The tail uses
meet-in-the-middle: half-sums of the first and second half of the weights
are enumerated, one half is sorted, and pairs with ``l + r >= x`` are
counted.  Full-support enumeration (``atom_support``) forms the same
``l + r`` doubles, so an atom fed back into ``exact_tail`` is counted
consistently.

Ties: weights such as ``1/sqrt(2)`` do not sum to ``sqrt(2)`` in floating
point, so a threshold counts every sum ``>= x - eps`` with
``eps = TIE_RTOL * sum(a)``.  Atoms closer than ``eps`` are merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateError, DomainError, InvalidWeightsError, SizeError
from .gaussian import normal_tail

N_MAX = 40
SUPPORT_N_MAX = 24
TIE_RTOL = 1e-12
NORM_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Descending nonnegative weights with unit sum of squares."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = self.weights
        if len(w) == 0:
            raise InvalidWeightsError("weight vector must be non-empty")
        if any(not math.isfinite(a) for a in w):
            raise DomainError("weights must be finite")
        if any(a < 0 for a in w) or any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise InvalidWeightsError("weights must be nonnegative and sorted descending")
        if abs(math.fsum(a * a for a in w) - 1.0) > NORM_TOL:
            raise InvalidWeightsError("weights must have unit sum of squares")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def tau(self) -> float:
        return self.weights[0]

    @property
    def theta(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.tau * self.tau))

    @property
    def l1(self) -> float:
        """Largest atom, sum of the weights."""
        return math.fsum(self.weights)

    def tie_eps(self) -> float:
        return TIE_RTOL * max(self.l1, 1.0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def __len__(self) -> int:
        return len(self.weights)


def normalize(raw: Iterable[float]) -> WeightVector:
    """Absolute values, zeros dropped, sorted descending, unit sum of squares."""
    vals = [float(v) for v in raw]
    if not vals:
        raise InvalidWeightsError("empty weight list")
    if any(not math.isfinite(v) for v in vals):
        raise DomainError(f"non-finite weight in {vals!r}")
    mags = sorted((abs(v) for v in vals if v != 0.0), reverse=True)
    if not mags:
        raise InvalidWeightsError("all weights are zero")
    # scale first so the sum of squares cannot overflow or underflow
    top = mags[0]
    scaled = [m / top for m in mags]
    norm = math.sqrt(math.fsum(s * s for s in scaled))
    # entries that underflow after scaling carry no mass at double precision
    return WeightVector(tuple(v for v in (s / norm for s in scaled) if v > 0.0))


def _as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else normalize(w)


def half_sums(weights: Sequence[float]) -> np.ndarray:
    """All 2**m signed sums of ``weights`` (exactly symmetric multiset)."""
    s = np.zeros(1)
    for a in weights:
        s = np.concatenate((s - a, s + a))
    return s


def _halves(w: WeightVector) -> tuple[np.ndarray, np.ndarray]:
    k = w.n // 2
    return half_sums(w.weights[:k]), half_sums(w.weights[k:])


def _count_at_least(left: np.ndarray, right_sorted: np.ndarray, thr: float) -> int:
    """#{(i, j): left[i] + right_sorted[j] >= thr}, with float addition."""
    m = right_sorted.size
    k = np.searchsorted(right_sorted, thr - left, side="left")
    # fix-up so the criterion is exactly `l + r >= thr` on computed doubles;
    # floating addition is monotone, so the boundary moves by a few slots at most
    while True:
        km = np.clip(k - 1, 0, m - 1)
        down = (k > 0) & (left + right_sorted[km] >= thr)
        if not down.any():
            break
        k = np.where(down, k - 1, k)
    while True:
        kc = np.clip(k, 0, m - 1)
        up = (k < m) & (left + right_sorted[kc] < thr)
        if not up.any():
            break
        k = np.where(up, k + 1, k)
    return int(np.sum(m - k, dtype=np.int64))


def exact_count(w, x: float, n_max: int = N_MAX) -> int:
    """Number of sign vectors (out of 2**n) with S_n >= x."""
    w = _as_weights(w)
    if not math.isfinite(x):
        raise DomainError(f"threshold must be finite, got {x!r}")
    if w.n > n_max:
        raise SizeError(f"n = {w.n} exceeds N_max = {n_max}")
    return _count_raw(w, x - w.tie_eps())


def _count_raw(w: WeightVector, thr: float) -> int:
    left, right = _halves(w)
    right.sort()
    return _count_at_least(left, right, thr)


def exact_tail(w, x: float, n_max: int = N_MAX) -> float:
    """P{S_n >= x} computed by meet-in-the-middle."""
    w = _as_weights(w)
    return exact_count(w, x, n_max) / float(2**w.n)


def full_sums(w: WeightVector) -> np.ndarray:
    """Sorted array of all 2**n sums, formed as left + right half-sums."""
    if w.n > SUPPORT_N_MAX:
        raise SizeError(f"full enumeration limited to n <= {SUPPORT_N_MAX}, got {w.n}")
    left, right = _halves(w)
    s = (left[:, None] + right[None, :]).ravel()
    s.sort()
    return s


@dataclass(frozen=True)
class Support:
    values: np.ndarray
    counts: np.ndarray
    n: int

    @property
    def probs(self) -> np.ndarray:
        return self.counts / float(2**self.n)

    def tail_counts(self) -> np.ndarray:
        """Counts of S >= value for each atom."""
        return np.cumsum(self.counts[::-1])[::-1]

    def as_pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.probs.tolist()))


def atom_support(w) -> Support:
    """Distinct values of S_n with their probabilities.

    Sums within the tie tolerance are merged; the representative of a
    positive cluster is its smallest member and negative clusters mirror
    the positive ones, so the support is exactly symmetric.
    """
    w = _as_weights(w)
    s = full_sums(w)
    eps = w.tie_eps()
    pos = s[s > eps]
    n_zero = s.size - 2 * pos.size
    if pos.size:
        breaks = np.flatnonzero(np.diff(pos) > eps) + 1
        starts = np.concatenate(([0], breaks))
        reps = pos[starts]
        counts = np.diff(np.concatenate((starts, [pos.size])))
    else:
        reps = np.empty(0)
        counts = np.empty(0, dtype=np.int64)
    values = np.concatenate((-reps[::-1], [0.0] if n_zero else [], reps))
    cnt = np.concatenate((counts[::-1], [n_zero] if n_zero else [], counts)).astype(np.int64)
    return Support(values=values, counts=cnt, n=w.n)


def positive_atom_tails(w) -> tuple[np.ndarray, np.ndarray]:
    """Positive atoms and P{S_n >= atom} for each."""
    sup = atom_support(w)
    tails = sup.tail_counts() / float(2**sup.n)
    mask = sup.values > 0
    return sup.values[mask], tails[mask]


@dataclass
class RatioReport:
    weights: WeightVector
    x: float
    exact: float
    gauss_tail: float
    ratio: float
    bounds: dict[str, float] = field(default_factory=dict)
    valid_bounds: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "weights": list(self.weights.weights),
            "x": self.x,
            "exact": self.exact,
            "gauss_tail": self.gauss_tail,
            "ratio": self.ratio,
            "bounds": dict(self.bounds),
            "valid_bounds": list(self.valid_bounds),
        }


def ratio(w, x: float, c_L: float = 0.56) -> RatioReport:
    """Exact tail against the Gaussian tail, with every catalogued bound."""
    from .bounds import bound_table

    w = _as_weights(w)
    p = exact_tail(w, x)
    g = normal_tail(x)
    table, valid = bound_table(x, w.tau, c_L=c_L)
    return RatioReport(
        weights=w,
        x=float(x),
        exact=p,
        gauss_tail=g,
        ratio=p / g if g > 0 else math.inf,
        bounds=table,
        valid_bounds=valid,
    )


def split_check(w, x: float) -> float:
    """|P{S_n >= x} - (P{X >= A} + P{X >= B}) / 2| after conditioning on eps_1.

    X = (a_2 eps_2 + ... + a_n eps_n) / theta, A = (x - tau)/theta,
    B = (x + tau)/theta.  Both sides are exact dyadic counts.
    """
    w = _as_weights(w)
    if w.n < 2:
        raise SizeError("conditioning on the first sign needs n >= 2")
    tail_w = w.weights[1:]
    rest_norm = math.sqrt(math.fsum(a * a for a in tail_w))
    if rest_norm == 0.0:
        raise DegenerateError("theta = 0: remaining weights vanish")
    theta = w.theta
    lhs = exact_count(w, x)
    rest = WeightVector(tuple(a / rest_norm for a in tail_w))
    # both sides use the tie-adjusted threshold of the full sum, so an atom
    # inside the tie band is counted on both sides or on neither
    thr = x - w.tie_eps()
    a_thr = (thr - w.tau) / theta
    b_thr = (thr + w.tau) / theta
    if w.n > N_MAX:
        raise SizeError(f"n = {w.n} exceeds N_max = {N_MAX}")
    # P{X >= A} + P{X >= B} over 2**(n-1) equals twice the right side over 2**n
    rhs = _count_raw(rest, a_thr) + _count_raw(rest, b_thr)
    return abs(lhs - rhs) / float(2**w.n)
