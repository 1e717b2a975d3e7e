"""Tails of self-normalized sums T_n = sum X_i / sqrt(sum X_i^2), X_i symmetric.

Writing X_i = eps_i R_i with R_i = |X_i| and independent fair signs eps_i,
T_n given R is the Rademacher sum with weights R / |R|.  Fixed magnitudes
therefore reduce to an exact tail; random ones are handled by Monte Carlo.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ArgumentError
from .exact import exact_tail, normalize

BLOCK = 1 << 16
MIN_SAMPLES = 10_000
SAMPLERS = ("lognormal", "exponential", "pareto")
_DEFAULTS = {
    "lognormal": {"mu": 0.0, "sigma": 1.0},
    "exponential": {"scale": 1.0},
    "pareto": {"alpha": 3.0},
}


def _check_positive(values) -> list[float]:
    vals = [float(v) for v in values]
    if not vals:
        raise ArgumentError("magnitudes must be non-empty")
    for v in vals:
        if not (math.isfinite(v) and v > 0):
            raise ArgumentError(f"magnitudes must be finite and positive, got {v!r}")
    return vals


def exact_selfnorm_tail(magnitudes, x: float) -> float:
    """P{T_n >= x} for fixed magnitudes and fair random signs."""
    return exact_tail(normalize(_check_positive(magnitudes)), x)


@dataclass(frozen=True)
class MagnitudeModel:
    """Either fixed magnitudes or an i.i.d. sampler for n magnitudes."""

    kind: str
    n: int
    values: tuple = ()
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "fixed":
            vals = tuple(_check_positive(self.values))
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "n", len(vals))
            return
        if self.kind not in SAMPLERS:
            raise ArgumentError(f"unknown sampler {self.kind!r}; expected fixed or one of {', '.join(SAMPLERS)}")
        if self.n < 1:
            raise ArgumentError("n must be >= 1")
        unknown = set(self.params) - set(_DEFAULTS[self.kind])
        if unknown:
            raise ArgumentError(f"unknown parameters for {self.kind}: {', '.join(sorted(unknown))}")
        params = {**_DEFAULTS[self.kind], **{k: float(v) for k, v in self.params.items()}}
        if self.kind == "lognormal" and not params["sigma"] > 0:
            raise ArgumentError("lognormal sigma must be > 0")
        if self.kind == "exponential" and not params["scale"] > 0:
            raise ArgumentError("exponential scale must be > 0")
        if self.kind == "pareto" and not params["alpha"] > 0:
            raise ArgumentError("pareto alpha must be > 0")
        object.__setattr__(self, "params", params)

    @classmethod
    def fixed(cls, values) -> "MagnitudeModel":
        return cls("fixed", 0, tuple(values))

    @classmethod
    def sampler(cls, name: str, n: int, **params) -> "MagnitudeModel":
        return cls(name, n, (), params)

    @classmethod
    def parse(cls, text: str) -> "MagnitudeModel":
        """Parse ``fixed:1,2,3`` or ``lognormal:n=5,mu=0,sigma=1`` style specs."""
        name, _, rest = text.partition(":")
        name = name.strip().lower()
        if name == "fixed":
            try:
                return cls.fixed(float(v) for v in rest.split(",") if v.strip())
            except ValueError as exc:
                raise ArgumentError(f"bad magnitude list {rest!r}") from exc
        kv = {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise ArgumentError(f"expected key=value, got {item!r}")
            try:
                kv[key.strip()] = float(val)
            except ValueError as exc:
                raise ArgumentError(f"bad value in {item!r}") from exc
        n = kv.pop("n", None)
        if n is None or n != int(n):
            raise ArgumentError("sampler models need an integer n=<count>")
        return cls.sampler(name, int(n), **kv)

    def draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "fixed":
            return np.broadcast_to(np.asarray(self.values), (size, self.n))
        p = self.params
        if self.kind == "lognormal":
            return rng.lognormal(p["mu"], p["sigma"], (size, self.n))
        if self.kind == "exponential":
            return rng.exponential(p["scale"], (size, self.n))
        return 1.0 + rng.pareto(p["alpha"], (size, self.n))

    def as_dict(self) -> dict:
        if self.kind == "fixed":
            return {"kind": "fixed", "n": self.n, "values": list(self.values)}
        return {"kind": self.kind, "n": self.n, "params": dict(sorted(self.params.items()))}


class TailEstimate(NamedTuple):
    estimate: float
    stderr: float


def _block_hits(model: MagnitudeModel, seed: int, index: int, size: int, x: float) -> int:
    # each block owns a child seed, so results do not depend on how blocks are grouped
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    r = model.draw(rng, BLOCK)[:size]
    signs = rng.integers(0, 2, (BLOCK, model.n), dtype=np.int8)[:size] * 2 - 1
    t = (signs * r).sum(axis=1) / np.sqrt(np.square(r).sum(axis=1))
    bound = math.sqrt(model.n) * (1 + 1e-12)
    if np.any(np.abs(t) > bound):
        raise AssertionError("|T_n| exceeded sqrt(n)")
    eps = 1e-12 * math.sqrt(model.n)
    return int(np.count_nonzero(t >= x - eps))


def mc_selfnorm_tail(model: MagnitudeModel, samples: int, seed: int, x: float, threads: int = 1) -> TailEstimate:
    """Monte Carlo estimate of P{T_n >= x} with its binomial standard error."""
    if samples < MIN_SAMPLES:
        raise ArgumentError(f"samples must be >= {MIN_SAMPLES}")
    if threads < 1:
        raise ArgumentError("threads must be >= 1")
    sizes = [BLOCK] * (samples // BLOCK)
    if samples % BLOCK:
        sizes.append(samples % BLOCK)
    jobs = [(model, seed, i, s, x) for i, s in enumerate(sizes)]
    if threads == 1:
        hits = sum(_block_hits(*j) for j in jobs)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(lambda j: _block_hits(*j), jobs))
    p = hits / samples
    return TailEstimate(p, math.sqrt(p * (1 - p) / samples))
