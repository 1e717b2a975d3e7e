"""Interval arithmetic and branch-and-bound sign certificates."""

from .bnb import DISPROVED, INCONCLUSIVE, PROVED, Certificate, Leaf, certify, certify_all
from .claims import CLAIM_ORDER, Box, CertConfig, Claim, build_claims, eval_claim, shifted
from .interval import Interval, SplitRequired, enclose_density, enclose_tail
from .soundness import SoundnessReport, check_certificates

__all__ = [
    "Box",
    "CLAIM_ORDER",
    "CertConfig",
    "Certificate",
    "Claim",
    "DISPROVED",
    "INCONCLUSIVE",
    "Interval",
    "Leaf",
    "PROVED",
    "SoundnessReport",
    "SplitRequired",
    "build_claims",
    "certify",
    "certify_all",
    "check_certificates",
    "eval_claim",
    "enclose_density",
    "enclose_tail",
    "shifted",
]
