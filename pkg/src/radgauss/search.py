"""Search the weight simplex for the largest exact-to-Gaussian tail ratio.

Candidates are parametrized by squared weights, so every candidate is
normalized by construction.  Only positive atoms of S_n are scored: the
tail is constant between consecutive atoms while I(x) decreases, so the
ratio on any gap is below its value at the atom closing the gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import ArgumentError
from .exact import WeightVector, normalize, positive_atom_tails
from .gaussian import normal_tail

GRID_N_MAX = 8
STEP_RANGE = (0.01, 0.5)


@dataclass
class SearchResult:
    best_weights: WeightVector
    best_x: float
    best_ratio: float
    evaluations: int
    trace: Optional[list] = field(default=None)

    def as_dict(self) -> dict:
        d = {
            "best_weights": list(self.best_weights.weights),
            "best_x": self.best_x,
            "best_ratio": self.best_ratio,
            "evaluations": self.evaluations,
        }
        if self.trace is not None:
            d["trace"] = [[list(w), x, r] for w, x, r in self.trace]
        return d


def best_atom(w: WeightVector) -> tuple[float, float]:
    """(x, ratio) maximizing P{S_n >= x} / I(x) over positive atoms x."""
    atoms, tails = positive_atom_tails(w)
    if atoms.size == 0:
        return math.nan, -math.inf
    r = tails / normal_tail(atoms)
    k = int(np.argmax(r))
    return float(atoms[k]), float(r[k])


def _partitions(m: int, n: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Partitions of m into at most n parts, each <= cap, descending, in reverse lex order."""
    if m == 0:
        yield ()
        return
    if n == 0:
        return
    # the first part is at least ceil(m / n) so the rest fits in n - 1 parts
    for first in range(min(cap, m), -(-m // n) - 1, -1):
        for rest in _partitions(m - first, n - 1, first):
            yield (first,) + rest


def grid_cells(n: int, step: float) -> int:
    """Number of grid units (1/step); raises ArgumentError if the grid is infeasible."""
    if not 1 <= n <= GRID_N_MAX:
        raise ArgumentError(f"n must lie in [1, {GRID_N_MAX}]")
    if not STEP_RANGE[0] <= step <= STEP_RANGE[1]:
        raise ArgumentError(f"step must lie in [{STEP_RANGE[0]}, {STEP_RANGE[1]}]")
    m = round(1.0 / step)
    if abs(m * step - 1.0) > 1e-9:
        raise ArgumentError(f"1/step = {1.0 / step:g} is not an integer")
    if m < n:
        raise ArgumentError(f"step {step:g} gives fewer than {n} grid units, too coarse for n = {n}")
    return m


def grid_search(n: int, step: float, keep_trace: bool = False) -> SearchResult:
    """Exhaustive search over squared weights k_i * step with k_i >= 0, sum k_i = 1/step.

    Weight order does not affect S_n, so each multiset is visited once;
    zero weights are dropped, so faces of the simplex are included.
    Ties keep the lexicographically largest squared-weight tuple, which
    is visited first.
    """
    m = grid_cells(n, step)
    best: Optional[tuple[WeightVector, float, float]] = None
    trace = [] if keep_trace else None
    count = 0
    for parts in _partitions(m, n, m):
        w = normalize([math.sqrt(k / m) for k in parts])
        x, r = best_atom(w)
        count += 1
        if trace is not None:
            trace.append((w.weights, x, r))
        if best is None or r > best[2]:
            best = (w, x, r)
    assert best is not None
    return SearchResult(best[0], best[1], best[2], count, trace)


def local_search(
    start,
    iterations: int = 10_000,
    seed: int = 0,
    step: float = 0.05,
    min_step: float = 1e-12,
) -> SearchResult:
    """Random pairwise moves of squared mass, keeping strict improvements.

    The move size grows after a success and shrinks after a failure, so
    the search can settle to high accuracy near a smooth maximum.
    """
    if iterations < 1:
        raise ArgumentError("iterations must be >= 1")
    w = start if isinstance(start, WeightVector) else normalize(start)
    x, r = best_atom(w)
    evaluations = 1
    n = w.n
    if n == 1:
        return SearchResult(w, x, r, evaluations)
    rng = np.random.default_rng(seed)
    sq = np.square(w.as_array())
    for _ in range(iterations):
        i, j = rng.choice(n, size=2, replace=False)
        amount = step * rng.uniform(-1.0, 1.0)
        trial = sq.copy()
        trial[i] += amount
        trial[j] -= amount
        if trial[i] <= 0 or trial[j] <= 0:
            step = max(min_step, step * 0.5)
            continue
        cand = normalize(np.sqrt(trial))
        cx, cr = best_atom(cand)
        evaluations += 1
        if cr > r:
            w, x, r = cand, cx, cr
            sq = np.square(w.as_array())
            step = min(0.25, step * 1.5)
        else:
            step = max(min_step, step * 0.7)
    return SearchResult(w, x, r, evaluations)
