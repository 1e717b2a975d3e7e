"""Spot checks of certified leaves in high-precision point arithmetic.

Each claim's margin is re-implemented with mpmath, independently of the
interval code, and evaluated at random points of every accepted leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np

from .bnb import Certificate
from .claims import Claim, build_claims, CertConfig

DPS = 60
PER_LEAF = 100
TOTAL_CAP = 100_000


class PointMargins:
    """Margins of the named claims at a point, to ``dps`` digits."""

    def __init__(self, c_L: float = 0.56, dps: int = DPS):
        self.dps = dps
        with mpmath.workdps(dps):
            self.sqrt2 = mpmath.sqrt(2)
            self.sqrt3 = mpmath.sqrt(3)
            self.c_star = 1 / (4 * self.tail(self.sqrt2))
            t3, p3 = self.tail(self.sqrt3), self.dens(self.sqrt3)
            self.q_alpha = 2 * self.c_star * p3
            self.q_beta = 6 * self.sqrt3 * self.c_star * p3 - 2 * self.c_star * t3 - 1
            self.q_gamma = 2 * self.sqrt3 * self.c_star * t3

    @staticmethod
    def tail(y):
        return mpmath.erfc(y / mpmath.sqrt(2)) / 2

    @staticmethod
    def dens(y):
        return mpmath.exp(-y * y / 2) / mpmath.sqrt(2 * mpmath.pi)

    def _f(self, x, tau):
        th = mpmath.sqrt(1 - tau * tau)
        b = (x + tau) / th
        d = (x - tau) ** 2 - 4 * x * tau
        c = self.c_star
        return d * c * self.tail(b) - 2 * c * (x - tau) ** 2 * self.tail(x) + th * th / 2

    def __call__(self, name: str, x: float, tau: float):
        with mpmath.workdps(self.dps):
            x, tau = mpmath.mpf(x), mpmath.mpf(tau)
            I, phi, c = self.tail, self.dens, self.c_star
            if name == "G_NEG":
                return self._f(self.sqrt3, tau)
            if name == "Q_NEG":
                return -self.q_alpha * tau**2 + self.q_beta * tau - self.q_gamma
            if name == "LOWX":
                return min(mpmath.mpf(1) / 2, 1 / (2 * x * x)) - c * I(x)
            if name == "H_NONPOS":
                return (1 - tau * tau) / (x - tau) ** 2 - 4 * c * I(x)
            th = mpmath.sqrt(1 - tau * tau)
            a, b = (x - tau) / th, (x + tau) / th
            if name == "KKK":
                return I(a) + I(b) - 2 * I(x)
            if name == "LEM2":
                return phi(b) - th * phi(x)
            if name == "LEM3":
                return I(x) - phi(x) * tau - I(b)
            if name == "DFX_POS":
                d = (x - tau) ** 2 - 4 * x * tau
                dfx = (
                    2 * (x - 3 * tau) * c * I(b)
                    - d * c * phi(b) / th
                    - 4 * c * (x - tau) * I(x)
                    + 2 * c * (x - tau) ** 2 * phi(x)
                )
                return -dfx
        raise KeyError(name)


@dataclass
class SoundnessReport:
    checked: int = 0
    skipped_outside: int = 0
    violations: list = field(default_factory=list)
    per_leaf: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "checked": self.checked,
            "skipped_outside_region": self.skipped_outside,
            "points_per_leaf": self.per_leaf,
            "violations": self.violations,
        }


def check_certificates(
    certs: list[Certificate],
    claims: dict[str, Claim] | None = None,
    config: CertConfig | None = None,
    per_leaf: int = PER_LEAF,
    cap: int = TOTAL_CAP,
    seed: int = 0,
) -> SoundnessReport:
    """Sample accepted leaves and confirm the claimed sign at each point.

    With more leaves than ``cap / per_leaf`` the per-leaf count is reduced
    uniformly (never below one point per leaf).
    """
    config = config or CertConfig()
    claims = claims or build_claims(config)
    total = sum(c.leaf_count for c in certs)
    k = max(1, min(per_leaf, cap // max(total, 1)))
    margins = PointMargins(config.c_L)
    rng = np.random.default_rng(seed)
    report = SoundnessReport(per_leaf=k)
    for cert in certs:
        claim = claims[cert.claim]
        for leaf in cert.leaves:
            bx, bt = leaf.box.x, leaf.box.tau
            xs = rng.uniform(bx.lo, bx.hi, k) if bx.width > 0 else np.full(k, bx.lo)
            ts = rng.uniform(bt.lo, bt.hi, k) if bt.width > 0 else np.full(k, bt.lo)
            for x, t in zip(xs.tolist(), ts.tolist()):
                if not claim.contains(x, t):
                    report.skipped_outside += 1
                    continue
                m = margins(claim.base, x, t) + claim.offset
                report.checked += 1
                bad = m >= 0 if claim.strict else m > 0
                if bad:
                    report.violations.append({"claim": claim.name, "x": x, "tau": t, "margin": float(m)})
    return report
