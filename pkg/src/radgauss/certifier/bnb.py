"""Adaptive bisection that turns interval enclosures into sign certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ArgumentError
from .claims import CLAIM_ORDER, Box, CertConfig, Claim, Part, build_claims
from .interval import Interval, SplitRequired

PROVED = "Proved"
DISPROVED = "Disproved"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Leaf:
    box: Box
    part: str
    method: str
    bound: float

    def as_row(self) -> list:
        return [self.box.x.lo, self.box.x.hi, self.box.tau.lo, self.box.tau.hi, self.part, self.method, self.bound]


@dataclass
class Certificate:
    claim: str
    statement: str
    status: str
    leaves: list[Leaf] = field(default_factory=list)
    unresolved: list[Box] = field(default_factory=list)
    witness: Optional[dict] = None
    worst_bound: float = -math.inf
    depth_used: int = 0
    discarded: int = 0
    config: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    anchors: dict = field(default_factory=dict)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @property
    def proved(self) -> bool:
        return self.status == PROVED

    def methods_used(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for leaf in self.leaves:
            key = f"{leaf.part}/{leaf.method}"
            out[key] = out.get(key, 0) + 1
        return dict(sorted(out.items()))

    def as_dict(self, include_leaves: bool = True) -> dict:
        d = {
            "claim": self.claim,
            "statement": self.statement,
            "status": self.status,
            "leaves": self.leaf_count,
            "worst_bound": self.worst_bound if self.leaves else None,
            "depth_used": self.depth_used,
            "discarded_outside_region": self.discarded,
            "methods": self.methods_used(),
            "config": self.config,
            "notes": list(self.notes),
            "anchors": {k: [v.lo, v.hi] for k, v in self.anchors.items()},
            "witness": self.witness,
            "unresolved": [b.as_dict() for b in self.unresolved],
        }
        if include_leaves:
            d["leaf_boxes"] = {
                "columns": ["x_lo", "x_hi", "tau_lo", "tau_hi", "part", "method", "bound"],
                "rows": [leaf.as_row() for leaf in self.leaves],
            }
        return d


def _score(part: Part, box: Box) -> tuple[Optional[float], str]:
    best: Optional[float] = None
    best_name = ""
    for name, method in part.methods:
        try:
            s = method(box.x, box.tau)
        except SplitRequired:
            s = None
        if s is None:
            continue
        if s < 0:
            return s, name
        if best is None or s < best:
            best, best_name = s, name
    return best, best_name


def _witness(claim: Claim, box: Box) -> Optional[dict]:
    """Point in the region where the margin is rigorously positive."""
    for px, pt in ((box.x.lo, box.tau.lo), (box.x.mid, box.tau.mid)):
        if not claim.contains(px, pt):
            continue
        try:
            m = claim.margin(Interval(px), Interval(pt))
        except SplitRequired:
            continue
        if m.lo > 0:
            value = Interval(m.lo - claim.offset, m.hi - claim.offset) if claim.offset else m
            return {"x": px, "tau": pt, "value": value.mid, "value_enclosure": [value.lo, value.hi], "margin_lo": m.lo}
    return None


def certify(
    claim: Claim | str,
    tol: float = 1e-12,
    max_depth: int = 40,
    config: CertConfig | None = None,
) -> Certificate:
    """Certify ``claim`` by bisection until every box has a negative score.

    Boxes are processed depth-first in a fixed order and leaves are sorted
    before returning, so the certificate does not depend on scheduling.
    """
    if not tol > 0:
        raise ArgumentError("tol must be positive")
    if not 0 <= max_depth <= 60:
        raise ArgumentError("max_depth must lie in [0, 60]")
    config = config or CertConfig(tol=tol, max_depth=max_depth)
    if isinstance(claim, str):
        claims = build_claims(config)
        if claim not in claims:
            raise ArgumentError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIM_ORDER)}")
        claim = claims[claim]

    cert = Certificate(
        claim=claim.name,
        statement=claim.statement,
        status=PROVED,
        config={**config.as_dict(), "tol": tol, "max_depth": max_depth},
        anchors=dict(claim.anchors),
    )
    if claim.remark:
        cert.notes.append(claim.remark)
    for part in claim.parts:
        if part.note:
            cert.notes.append(f"{part.name}: {part.note}")
        stack: list[tuple[Box, int]] = [(part.box, 0)]
        while stack:
            box, depth = stack.pop()
            cert.depth_used = max(cert.depth_used, depth)
            if part.outside is not None and part.outside(box):
                cert.discarded += 1
                continue
            score, method = _score(part, box)
            if score is not None and score < 0:
                cert.leaves.append(Leaf(box, part.name, method, score))
                continue
            w = _witness(claim, box)
            if w is not None:
                cert.status = DISPROVED
                cert.witness = w
                _finish(cert)
                return cert
            if depth >= max_depth or box.diameter(part.dims) < tol:
                cert.unresolved.append(box)
                continue
            left, right = box.bisect(part.dims)
            stack.append((right, depth + 1))
            stack.append((left, depth + 1))
    if cert.unresolved:
        cert.status = INCONCLUSIVE
    _finish(cert)
    return cert


def _finish(cert: Certificate) -> None:
    cert.leaves.sort(key=lambda lf: (lf.part, lf.box.sort_key()))
    cert.unresolved.sort(key=lambda b: b.sort_key())
    if cert.leaves:
        cert.worst_bound = max(lf.bound for lf in cert.leaves)


def certify_all(config: CertConfig | None = None, names=None) -> list[Certificate]:
    """Run the full claim suite; overall success means every entry is Proved."""
    config = config or CertConfig()
    claims = build_claims(config)
    names = list(names) if names else list(CLAIM_ORDER)
    return [certify(claims[n], tol=config.tol, max_depth=config.max_depth, config=config) for n in names]
