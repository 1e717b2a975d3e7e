import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SQRT2
from radgauss import ArgumentError, atom_support, exact_tail, normal_tail, normalize, optimal_constant
from radgauss.search import _partitions, best_atom, grid_search, local_search

C = optimal_constant()


def test_partitions_enumerate_multisets():
    parts = list(_partitions(6, 3, 6))
    assert parts == [(6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (2, 2, 2)]
    assert all(sum(p) == 6 and list(p) == sorted(p, reverse=True) for p in parts)


def test_grid_two_weights_finds_equality_case():
    res = grid_search(2, 0.01)
    assert res.best_weights.weights == pytest.approx((1 / SQRT2, 1 / SQRT2))
    assert res.best_x == pytest.approx(SQRT2)
    assert res.best_ratio == pytest.approx(C, abs=1e-6)


def test_grid_single_weight():
    res = grid_search(1, 0.5)
    assert res.best_x == 1.0
    assert res.best_ratio == pytest.approx(0.5 / 0.15865525393145705, rel=1e-14)
    assert res.best_ratio == pytest.approx(3.1515, abs=1e-4)


def test_grid_three_weights_stays_in_two_weight_face():
    res = grid_search(3, 0.02)
    assert res.best_ratio <= C * (1 + 1e-9)
    assert res.best_weights.n == 2
    # the grid oracle: brute force over all compositions with ordered weights
    m = 50
    best = -1.0
    for i in range(m + 1):
        for j in range(m + 1 - i):
            k = m - i - j
            w = normalize([math.sqrt(v / m) for v in (i, j, k) if v > 0])
            best = max(best, best_atom(w)[1])
    assert res.best_ratio == pytest.approx(best, rel=1e-14)


def test_grid_trace_and_sup_bound():
    res = grid_search(4, 0.05, keep_trace=True)
    assert len(res.trace) == res.evaluations
    assert max(r for _, _, r in res.trace) == res.best_ratio
    assert all(r <= C * (1 + 1e-9) for _, _, r in res.trace)
    sup = atom_support(res.best_weights)
    assert res.best_x in sup.values.tolist()


@pytest.mark.parametrize("n, step", [(3, 0.5), (2, 0.3), (9, 0.05), (0, 0.1), (2, 0.005), (2, 0.6)])
def test_grid_rejects_infeasible(n, step):
    with pytest.raises(ArgumentError):
        grid_search(n, step)


def test_grid_is_deterministic():
    a, b = grid_search(3, 0.05), grid_search(3, 0.05)
    assert a.as_dict() == b.as_dict()


def test_local_search_converges_to_equality_case():
    res = local_search([0.72, 0.69], iterations=10_000, seed=1)
    assert abs(res.best_ratio - C) <= 1e-8
    assert res.best_x == pytest.approx(SQRT2, abs=1e-6)


def test_local_search_single_weight_is_fixed():
    res = local_search([1.0], iterations=100, seed=5)
    assert res.best_ratio == pytest.approx(0.5 / normal_tail(1.0))
    assert res.evaluations == 1


def test_local_search_reproducible_and_monotone():
    start = normalize([0.6, 0.5, 0.4, 0.3])
    a = local_search(start, iterations=500, seed=42)
    b = local_search(start, iterations=500, seed=42)
    assert a.as_dict() == b.as_dict()
    assert a.best_ratio >= best_atom(start)[1]
    assert a.best_ratio <= C * (1 + 1e-9)
    with pytest.raises(ArgumentError):
        local_search(start, iterations=0)


@given(st.lists(st.floats(0.05, 1.0), min_size=1, max_size=10), st.data())
@settings(max_examples=60, deadline=None)
def test_ratio_between_atoms_is_below_the_next_atom(raw, data):
    w = normalize(raw)
    atoms = atom_support(w).values
    atoms = atoms[atoms > 0]
    for _ in range(100):
        x = data.draw(st.floats(0.0, float(atoms[-1]), exclude_min=True))
        if x <= w.tie_eps():
            continue
        nxt = atoms[np.searchsorted(atoms, x - w.tie_eps())]
        if abs(nxt - x) <= w.tie_eps():
            continue
        assert exact_tail(w, x) == exact_tail(w, float(nxt))
        assert normal_tail(x) > normal_tail(float(nxt))
        assert exact_tail(w, x) / normal_tail(x) < exact_tail(w, float(nxt)) / normal_tail(float(nxt))
