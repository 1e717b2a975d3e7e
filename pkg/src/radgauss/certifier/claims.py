"""Sign claims behind the induction step, as interval margin functions.

Every claim is oriented so that it holds iff its margin is negative.  The
variables are the threshold ``x`` and the largest weight ``tau``; with
``theta = sqrt(1 - tau^2)`` the shifted thresholds are
``A = (x - tau)/theta`` and ``B = (x + tau)/theta``.

Three claims touch zero on the boundary of their region and cannot be
closed by plain bisection; each gets an extra part built from a
factorization of the margin:

* H_NONPOS vanishes at (sqrt 2, 1/sqrt 2).  On x in [sqrt 2, sqrt 2 + delta]
  the tau-derivative of h is 2 (1 - tau x)/(x - tau)^3, so h(x, .) peaks at
  tau = 1/x with value H(x)/(x^2 - 1), H(x) = 1 - 4 c* (x^2 - 1) I(x).
  H(sqrt 2) = 0 by the definition of c*, so H' < 0 on the strip suffices.
* LOWX vanishes at x = sqrt 2; on [sqrt 2 - delta, sqrt 2] a positive
  derivative together with the zero at sqrt 2 suffices.
* KKK vanishes on the whole line tau = 0.  The margin G(tau) - G(0),
  G = I(A) + I(B), is even in tau with zero tau^2 coefficient and tau^4
  coefficient -phi(x) x (x^2 - 3) / 6, so
  margin = tau^4 [c4(x) + tau^2 R(x, tau)], where R collects the higher even
  coefficients and a Lagrange remainder, enclosed by interval Taylor
  arithmetic.  The strip tau in [1 - delta, 1] is
  closed with A >= (x - 1)/theta, which pushes I(A) + I(B) far below 2 I(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from ..errors import DomainError, RegionError
from . import jet
from .interval import (
    SQRT2,
    SQRT3,
    Interval,
    SplitRequired,
    enclose_density,
    enclose_tail,
)

I = enclose_tail
phi = enclose_density

CLAIM_ORDER = ("G_NEG", "DFX_POS", "H_NONPOS", "LEM2", "LEM3", "KKK", "Q_NEG", "LOWX")

TAYLOR_ORDER = 14
REGIONS = ("E1", "E2", "Custom")


@dataclass(frozen=True)
class CertConfig:
    x_max: float = 8.0
    delta: float = 1e-3
    tol: float = 1e-12
    max_depth: int = 40
    c_L: float = 0.56
    taylor_cap: float = 0.5

    def as_dict(self) -> dict:
        return {
            "x_max": self.x_max,
            "delta": self.delta,
            "tol": self.tol,
            "max_depth": self.max_depth,
            "c_L": self.c_L,
            "taylor_cap": self.taylor_cap,
        }


@dataclass(frozen=True)
class Box:
    x: Interval
    tau: Interval
    region: str = "Custom"

    def __post_init__(self):
        if self.region not in REGIONS:
            raise RegionError(f"unknown region tag {self.region!r}")
        if self.region != "Custom":
            if not (self.x.lo >= SQRT2.lo and self.x.hi <= SQRT3.hi and self.tau.lo >= 0 and self.tau.hi <= 1):
                raise RegionError(f"{self.region} box must lie in [sqrt 2, sqrt 3] x [0, 1]")

    def width(self, dim: str) -> float:
        return getattr(self, dim).width

    def diameter(self, dims=("x", "tau")) -> float:
        return max(self.width(d) for d in dims)

    def bisect(self, dims=("x", "tau")) -> tuple["Box", "Box"]:
        dim = max(dims, key=lambda d: self.width(d))  # ties keep the first listed
        a, b = getattr(self, dim).split()
        return replace(self, **{dim: a}), replace(self, **{dim: b})

    def sort_key(self) -> tuple:
        return (self.x.lo, self.x.hi, self.tau.lo, self.tau.hi)

    def as_dict(self) -> dict:
        return {"x": [self.x.lo, self.x.hi], "tau": [self.tau.lo, self.tau.hi], "region": self.region}


# A method maps a box to a score; score < 0 certifies the part on the box.
# None means the method does not apply to this box.
Method = Callable[[Interval, Interval], Optional[float]]


@dataclass
class Part:
    name: str
    box: Box
    methods: list[tuple[str, Method]]
    dims: tuple[str, ...] = ("x", "tau")
    outside: Optional[Callable[[Box], bool]] = None
    note: str = ""


@dataclass
class Claim:
    name: str
    statement: str
    region: str
    margin: Callable[[Interval, Interval], Interval]
    parts: list[Part]
    contains: Callable[[float, float], bool]
    strict: bool = True
    function_name: str = ""
    offset: float = 0.0
    anchors: dict = field(default_factory=dict)
    base: str = ""
    remark: str = ""

    def __post_init__(self):
        if not self.base:
            self.base = self.name

    def domain(self) -> Box:
        return Box(
            Interval.hull(*[p.box.x for p in self.parts]),
            Interval.hull(*[p.box.tau for p in self.parts]),
            self.region,
        )


class Context:
    """Rigorous enclosures of the constants for a given c_L."""

    def __init__(self, cfg: CertConfig):
        self.cfg = cfg
        self.c_star = 1 / (I(SQRT2) * 4)
        self.tail3 = I(SQRT3)
        self.dens3 = phi(SQRT3)
        self.tau_L = (self.c_star - 1) * self.tail3 / cfg.c_L
        self.tau_star = (3 - SQRT2 * 2) * SQRT3
        self.q_alpha = self.c_star * self.dens3 * 2
        self.q_beta = SQRT3 * 6 * self.c_star * self.dens3 - self.c_star * self.tail3 * 2 - 1
        self.q_gamma = SQRT3 * 2 * self.c_star * self.tail3


# -- shared pieces -----------------------------------------------------------


def theta(tau: Interval) -> Interval:
    if tau.hi > 1 or tau.lo < -1:
        raise DomainError(f"tau must lie in [-1, 1], got {tau!r}")
    # 1 - tau^2 >= 0 on the domain; rounding may dip a hair below zero
    return (1 - tau.sqr()).max0().sqrt()


def shifts(x: Interval, tau: Interval) -> tuple[Interval, Interval, Interval]:
    th = theta(tau)
    return (x - tau) / th, (x + tau) / th, th


def d_term(x: Interval, tau: Interval) -> Interval:
    """D = (x - tau)^2 - 4 x tau; E1 is D >= 0, E2 is D <= 0."""
    return (x - tau).sqr() - x * tau * 4


def f_margin(ctx: Context, x: Interval, tau: Interval) -> Interval:
    th = theta(tau)
    b = (x + tau) / th
    return d_term(x, tau) * ctx.c_star * I(b) - ctx.c_star * (x - tau).sqr() * I(x) * 2 + (1 - tau.sqr()) * 0.5


def dfx(ctx: Context, x: Interval, tau: Interval) -> Interval:
    """Partial derivative of f in x."""
    th = theta(tau)
    b = (x + tau) / th
    c = ctx.c_star
    return (
        (x - tau * 3) * c * I(b) * 2
        - d_term(x, tau) * c * phi(b) / th
        - (x - tau) * c * I(x) * 4
        + (x - tau).sqr() * c * phi(x) * 2
    )


def h_margin(ctx: Context, x: Interval, tau: Interval) -> Interval:
    return (1 - tau.sqr()) / (x - tau).sqr() - ctx.c_star * I(x) * 4


def ridge(ctx: Context, x: Interval) -> Interval:
    """H(x) = 1 - 4 c* (x^2 - 1) I(x)."""
    return 1 - ctx.c_star * (x.sqr() - 1) * I(x) * 4


def ridge_derivative(ctx: Context, x: Interval) -> Interval:
    c = ctx.c_star
    return (x.sqr() - 1) * c * phi(x) * 4 - x * c * I(x) * 8


def kkk_margin(x: Interval, tau: Interval) -> Interval:
    a, b, _ = shifts(x, tau)
    return I(a) + I(b) - I(x) * 2


def kkk_gradient(x: Interval, tau: Interval) -> tuple[Interval, Interval]:
    a, b, th = shifts(x, tau)
    pa, pb = phi(a), phi(b)
    th3 = th * th * th
    xt = x * tau
    d_x = phi(x) * 2 - (pa + pb) / th
    d_tau = -(pa * (xt - 1) + pb * (xt + 1)) / th3
    return d_x, d_tau


def kkk_quartic(x: Interval) -> Interval:
    """tau^4 coefficient of the KKK margin: -phi(x) x (x^2 - 3) / 6 (x >= sqrt 3)."""
    return (-(phi(x) * x * (x.sqr() - 3).max0()) / 6).minimum(0.0)


def _kkk_coefficients(x: Interval, base: Interval, n: int) -> list:
    """Taylor coefficients G_k (k = 1..n) of G = I(A) + I(B) about ``base``; index 0 unused."""
    t = jet.variable(base, n)
    th = jet.sqrt(jet.sub(jet.constant(1.0, n), jet.mul(t, t)))
    xc = jet.constant(x, n)
    a = jet.div(jet.sub(xc, t), th)
    b = jet.div(jet.add(xc, t), th)
    p = jet.add(
        jet.mul(jet.density(a[:n]), jet.derivative(a)),
        jet.mul(jet.density(b[:n]), jet.derivative(b)),
    )
    # G' = -(phi(A) A' + phi(B) B'), so G_k = -p_(k-1) / k
    return [None] + [-p[k - 1] / k for k in range(1, n + 1)]


def kkk_tail_factor(x: Interval, tau: Interval) -> Interval:
    """Enclosure of (margin/tau^4 - c4) / tau^2 over the box.

    G is even, so its odd coefficients at 0 vanish; the even ones from G_6
    on come from a point expansion and the order-TAYLOR_ORDER remainder
    from an expansion over [0, tau_hi].
    """
    n = TAYLOR_ORDER
    at0 = _kkk_coefficients(x, Interval(0.0), n - 1)
    rem = _kkk_coefficients(x, Interval(0.0, tau.hi), n)[n]
    u = tau.sqr()
    acc = rem
    for k in range(n - 2, 5, -2):
        acc = at0[k] + u * acc
    return acc


# -- methods -------------------------------------------------------------------


def plain(margin: Callable[[Interval, Interval], Interval]) -> Method:
    def run(x: Interval, tau: Interval) -> Optional[float]:
        return margin(x, tau).hi

    return run


def mean_value(margin, gradient) -> Method:
    """m(c) + grad(box) . (box - c); tight when the margin is nearly flat."""

    def run(x: Interval, tau: Interval) -> Optional[float]:
        cx, ct = Interval(x.mid), Interval(tau.mid)
        gx, gt = gradient(x, tau)
        return (margin(cx, ct) + gx * (x - cx) + gt * (tau - ct)).hi

    return run


def kkk_taylor(cap: float) -> Method:
    def run(x: Interval, tau: Interval) -> Optional[float]:
        if tau.hi > cap or tau.lo < 0:
            return None
        c4 = kkk_quartic(x)
        rest = kkk_tail_factor(x, tau)
        s = (c4 + tau.sqr() * rest).hi
        if s < 0:
            return s
        # margin = tau^4 (c4 + tau^2 rest) <= 0 once both pieces are <= 0
        if c4.hi <= 0 and rest.hi < 0:
            return rest.hi
        return s

    return run


def kkk_cap(x: Interval, tau: Interval) -> Optional[float]:
    """I(A) + I(B) <= 2 I(A_min) with A_min = (x_lo - 1)/theta(tau_lo)."""
    if tau.lo <= 0:
        return None
    a_min = (Interval(x.lo) - 1) / theta(Interval(tau.lo))
    return (I(a_min) * 2 - I(Interval(x.hi)) * 2).hi


# -- claim construction ------------------------------------------------------


def build_claims(cfg: CertConfig | None = None) -> dict[str, Claim]:
    cfg = cfg or CertConfig()
    ctx = Context(cfg)
    s2, s3 = SQRT2, SQRT3
    tau_lo = ctx.tau_L.lo
    e1_box = Box(Interval(s2.lo, s3.hi), Interval(tau_lo, ctx.tau_star.hi), "E1")

    def outside_e1(box: Box) -> bool:
        return d_term(box.x, box.tau).hi < 0

    def outside_e2(box: Box) -> bool:
        return d_term(box.x, box.tau).lo > 0

    def in_e1(x: float, t: float) -> bool:
        xi, ti = Interval(x), Interval(t)
        return s2.hi <= x <= s3.lo and t >= ctx.tau_L.hi and d_term(xi, ti).lo >= 0

    def in_e2(x: float, t: float) -> bool:
        xi, ti = Interval(x), Interval(t)
        return s2.hi <= x <= s3.lo and ctx.tau_L.hi <= t <= 1 and d_term(xi, ti).hi <= 0

    def g_fn(x, tau):
        return f_margin(ctx, s3, tau)

    def q_fn(x, tau):
        return -ctx.q_alpha * tau.sqr() + ctx.q_beta * tau - ctx.q_gamma

    def lem2_fn(x, tau):
        _, b, th = shifts(x, tau)
        return phi(b) - th * phi(x)

    def lem3_fn(x, tau):
        _, b, _ = shifts(x, tau)
        return I(x) - phi(x) * tau - I(b)

    def dfx_fn(x, tau):
        return -dfx(ctx, x, tau)

    def h_fn(x, tau):
        return h_margin(ctx, x, tau)

    def lowx_fn(x, tau):
        return 1 / (x.maximum(1.0).sqr() * 2) - ctx.c_star * I(x)

    claims: dict[str, Claim] = {}
    tau_range = Interval(tau_lo, ctx.tau_star.hi)

    claims["G_NEG"] = Claim(
        "G_NEG",
        "g(tau) = f(sqrt 3, tau) < 0 for tau in [tau_L, (3 - 2 sqrt 2) sqrt 3]",
        "Custom",
        g_fn,
        [Part("main", Box(s3, tau_range, "Custom"), [("plain", plain(g_fn))], dims=("tau",))],
        contains=lambda x, t: ctx.tau_L.lo <= t <= ctx.tau_star.hi,
        function_name="g",
    )
    claims["Q_NEG"] = Claim(
        "Q_NEG",
        "Q(tau) = -alpha tau^2 + beta tau - gamma < 0 for tau in [tau_L, (3 - 2 sqrt 2) sqrt 3]",
        "Custom",
        q_fn,
        [Part("main", Box(s3, tau_range, "Custom"), [("plain", plain(q_fn))], dims=("tau",))],
        contains=lambda x, t: ctx.tau_L.lo <= t <= ctx.tau_star.hi,
        function_name="Q",
    )
    claims["DFX_POS"] = Claim(
        "DFX_POS",
        "d f / d x > 0 on E1",
        "E1",
        dfx_fn,
        [Part("main", e1_box, [("plain", plain(dfx_fn))], outside=outside_e1)],
        contains=in_e1,
        function_name="-df/dx",
    )
    claims["LEM2"] = Claim(
        "LEM2",
        "I'(B) >= theta I'(x) on E1, i.e. phi(B) - theta phi(x) < 0",
        "E1",
        lem2_fn,
        [Part("main", e1_box, [("plain", plain(lem2_fn))], outside=outside_e1)],
        contains=in_e1,
        function_name="phi(B) - theta phi(x)",
    )
    claims["LEM3"] = Claim(
        "LEM3",
        "I(B) >= I(x) + I'(x) tau on E1",
        "E1",
        lem3_fn,
        [Part("main", e1_box, [("plain", plain(lem3_fn))], outside=outside_e1)],
        contains=in_e1,
        function_name="I(x) - phi(x) tau - I(B)",
    )

    d = cfg.delta
    strip_hi = s2.hi + d

    def ridge_method(x: Interval, tau: Interval) -> Optional[float]:
        # h(x, tau) <= h(x, 1/x) needs x - tau > 0 across the strip
        if (x - tau).lo <= 0:
            return None
        return ridge_derivative(ctx, x).hi

    claims["H_NONPOS"] = Claim(
        "H_NONPOS",
        "h(x, tau) = (1 - tau^2)/(x - tau)^2 - 4 c* I(x) <= 0 on E2",
        "E2",
        h_fn,
        [
            Part(
                "main",
                Box(Interval(strip_hi, s3.hi), Interval(tau_lo, 1.0), "E2"),
                [("plain", plain(h_fn))],
                outside=outside_e2,
            ),
            Part(
                "ridge",
                Box(Interval(s2.lo, strip_hi), Interval(tau_lo, 1.0), "E2"),
                [("ridge", ridge_method)],
                dims=("x",),
                note="h(x, tau) <= H(x)/(x^2 - 1) with H(sqrt 2) = 0 and H' < 0 on the strip",
            ),
        ],
        contains=in_e2,
        strict=False,
        function_name="h",
        anchors={"H(sqrt 2)": ridge(ctx, s2)},
    )

    x_max = float(cfg.x_max)
    tau_cut = 1.0 - d

    def kkk_contains(x: float, t: float) -> bool:
        return s3.hi <= x <= x_max and 0.0 < t < 1.0

    kkk_parts = [
        Part(
            "main",
            Box(Interval(s3.lo, x_max), Interval(0.0, tau_cut), "Custom"),
            [
                ("plain", plain(kkk_margin)),
                ("mean-value", mean_value(kkk_margin, kkk_gradient)),
                ("taylor", kkk_taylor(cfg.taylor_cap)),
            ],
        ),
        Part(
            "cap",
            Box(Interval(s3.lo, x_max), Interval(tau_cut, 1.0), "Custom"),
            [("cap", kkk_cap)],
            dims=("x",),
            note="A >= (x - 1)/theta(1 - delta) on the cap",
        ),
    ]
    claims["KKK"] = Claim(
        "KKK",
        f"I(A) + I(B) <= 2 I(x) for x in [sqrt 3, {x_max}], tau in [0, 1]",
        "Custom",
        kkk_margin,
        kkk_parts,
        contains=kkk_contains,
        strict=False,
        function_name="I(A) + I(B) - 2 I(x)",
        remark=f"covers x <= {x_max:g} only; larger x is left to the analytic argument and is not evaluated here",
    )

    low_hi = s2.lo - d

    def lowx_derivative(x: Interval, tau: Interval) -> Optional[float]:
        if x.lo < 1.0:
            return None
        # margin' = -1/x^3 + c* phi(x) > 0 and margin(sqrt 2) = 0
        return (1 / (x.sqr() * x) - ctx.c_star * phi(x)).hi

    zero = Interval(0.0)
    claims["LOWX"] = Claim(
        "LOWX",
        "min(1/2, 1/(2 x^2)) <= c* I(x) on (0, sqrt 2]",
        "Custom",
        lowx_fn,
        [
            Part("main", Box(Interval(0.0, low_hi), zero), [("plain", plain(lowx_fn))], dims=("x",)),
            Part(
                "strip",
                Box(Interval(low_hi, s2.hi), zero),
                [("derivative", lowx_derivative)],
                dims=("x",),
                note="increasing on the strip with a zero at sqrt 2",
            ),
        ],
        contains=lambda x, t: 0.0 < x <= s2.lo,
        strict=False,
        function_name="min(1/2, 1/(2x^2)) - c* I(x)",
        anchors={"margin(sqrt 2)": 1 / (s2.sqr() * 2) - ctx.c_star * I(s2)},
    )
    return claims


def shifted(claim: Claim, offset: float) -> Claim:
    """Claim 'margin < -offset' on the same domain, plain bisection only."""
    dom = claim.domain()
    outside = claim.parts[0].outside
    dims = tuple(d for d in ("x", "tau") if dom.width(d) > 0) or ("x",)
    if claim.name == "KKK":
        dom = claim.parts[0].box

    def fn(x, tau):
        return claim.margin(x, tau) + offset

    return Claim(
        name=f"{claim.name}{offset:+g}",
        statement=f"{claim.function_name} < {-offset:g} ({claim.statement})",
        region=claim.region,
        margin=fn,
        parts=[Part("main", dom, [("plain", plain(fn))], dims=dims, outside=outside)],
        contains=claim.contains,
        strict=True,
        function_name=claim.function_name,
        offset=offset,
        base=claim.base,
    )


def eval_claim(claim: Claim, box: Box) -> Interval:
    """Rigorous enclosure of the claim's margin on ``box``.

    Raises RegionError if the box misses the claim's region and
    SplitRequired if a denominator interval straddles zero.
    """
    dom = claim.domain()
    if not (dom.x.contains(box.x) and dom.tau.contains(box.tau)):
        raise RegionError(f"box {box.as_dict()} is outside the domain of {claim.name}")
    for part in claim.parts:
        if part.outside is not None and part.box.x.contains(box.x) and part.box.tau.contains(box.tau):
            if part.outside(box):
                raise RegionError(f"box {box.as_dict()} misses region {claim.region}")
    return claim.margin(box.x, box.tau)


__all__ = [
    "Box",
    "CertConfig",
    "Claim",
    "CLAIM_ORDER",
    "Context",
    "Part",
    "SplitRequired",
    "build_claims",
    "eval_claim",
    "shifted",
]
