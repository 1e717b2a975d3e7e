"""Independent oracles shared by the test modules."""

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def mp_tail(x, dps=40):
    with mpmath.workdps(dps):
        return mpmath.erfc(mpmath.mpf(x) / mpmath.sqrt(2)) / 2


def mp_density(x, dps=40):
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        return mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi)


def mp_c_star(dps=40):
    with mpmath.workdps(dps):
        return 1 / (4 * mp_tail(mpmath.sqrt(2), dps))


def sign_matrix(n: int) -> np.ndarray:
    """All 2**n sign vectors as rows."""
    return np.array(list(itertools.product((-1.0, 1.0), repeat=n)))


def brute_count(weights, x, eps=0.0) -> int:
    """#{signs : sum a_i eps_i >= x - eps} by direct enumeration."""
    w = np.asarray(weights, dtype=float)
    sums = sign_matrix(len(w)) @ w
    return int(np.count_nonzero(sums >= x - eps))


def fraction_atoms(weights):
    """Exact distribution {sum: count} for rational weights."""
    out: dict = {}
    ws = [Fraction(a) for a in weights]
    for signs in itertools.product((-1, 1), repeat=len(ws)):
        s = sum(e * a for e, a in zip(signs, ws))
        out[s] = out.get(s, 0) + 1
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
