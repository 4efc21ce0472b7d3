import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hqf.dynamics import FIXED_POINT, energy, run_serial
from hqf.hypercube import QUATERNARY, random_vertex
from hqf.network import Network
from hqf.oracle import (
    brute_force_extrema,
    census,
    is_corner_positive,
    tie_tolerance,
    verify_theorem,
)
from hqf.stability import is_anti_stable, is_stable

from instances import conforming_network, hermitian, hollow, symmetric

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def rows(X):
    return {tuple(x) for x in np.asarray(X)}


def product_extrema(A, flavor):
    """Independent oracle: loop over itertools.product with a Python form."""
    A = np.asarray(A)
    n = A.shape[0]
    spins = [1.0, -1.0] if flavor == "real" else list(QUATERNARY)
    vals = {}
    for x in itertools.product(spins, repeat=n):
        s = sum(np.conj(x[i]) * A[i, j] * x[j] for i in range(n) for j in range(n))
        vals[x] = complex(s).real
    lo, hi = min(vals.values()), max(vals.values())
    return lo, hi, vals


def test_real_swap_extrema():
    rep = brute_force_extrema(SWAP, "real")
    assert rep.min_value == -2 and rep.max_value == 2
    assert rows(rep.argmins) == {(1, -1), (-1, 1)}
    assert rows(rep.argmaxes) == {(1, 1), (-1, -1)}
    assert rep.vertex_count == 4


def test_complex_swap_extrema():
    rep = brute_force_extrema(SWAP, "complex")
    assert rep.min_value == -4 and rep.max_value == 4
    assert len(rep.argmins) == 4 and len(rep.argmaxes) == 4
    for x in rep.argmins:
        assert x[1] == -x[0]
    for x in rep.argmaxes:
        assert x[1] == x[0]
    assert rep.vertex_count == 16


@pytest.mark.parametrize("flavor, count", [("real", 8), ("complex", 64)])
def test_zero_matrix_extrema(flavor, count):
    rep = brute_force_extrema(np.zeros((3, 3)), flavor)
    assert rep.min_value == rep.max_value == 0
    assert len(rep.argmins) == len(rep.argmaxes) == count


def test_extrema_cap():
    with pytest.raises(ValueError, match="cap"):
        brute_force_extrema(np.zeros((25, 25)), "real")
    with pytest.raises(ValueError, match="cap"):
        brute_force_extrema(np.zeros((13, 13)), "complex")


def test_extrema_json():
    out = brute_force_extrema(SWAP, "real").to_json()
    assert out["argmins"] == [[1, -1], [-1, 1]]
    assert out["vertex_count"] == 4


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.sampled_from(["real", "complex"]))
def test_extrema_match_product_oracle(n, seed, flavor):
    rng = np.random.default_rng(seed)
    if flavor == "complex":
        n = min(n, 4)
    A = rng.uniform(-1, 1, (n, n))
    if flavor == "complex":
        A = A + 1j * rng.uniform(-1, 1, (n, n))
    rep = brute_force_extrema(A, flavor)
    lo, hi, vals = product_extrema(A, flavor)
    assert abs(rep.min_value - lo) <= 1e-12
    assert abs(rep.max_value - hi) <= 1e-12
    tol = tie_tolerance(A)
    assert rows(rep.argmins) == {x for x, v in vals.items() if v <= lo + tol}
    assert rows(rep.argmaxes) == {x for x, v in vals.items() if v >= hi - tol}
    assert rep.min_value <= rep.max_value


def test_real_argmins_come_in_sign_pairs(rng):
    for _ in range(10):
        rep = brute_force_extrema(symmetric(6, rng), "real")
        found = rows(rep.argmins)
        assert {tuple(-np.array(x)) for x in found} == found


def test_results_independent_of_thread_count(rng, monkeypatch):
    import hqf.oracle as oracle

    monkeypatch.setattr(oracle, "BLOCK", 64)
    A = symmetric(10, rng)
    one = brute_force_extrema(A, "real", workers=1)
    four = brute_force_extrema(A, "real", workers=4)
    assert one.to_json() == four.to_json()
    net = conforming_network(9, rng)
    assert census(net, workers=1).to_json() == census(net, workers=3).to_json()


def test_verify_examples():
    v = verify_theorem(SWAP, "real")
    assert v.holds and v.minimizers_checked == 2
    v = verify_theorem(np.diag([5.0, 7.0]), "real")
    assert v.holds and v.minimizers_checked == 4
    assert verify_theorem(SWAP, "complex").holds


def test_verify_rejects_non_hermitian_complex():
    with pytest.raises(ValueError):
        verify_theorem(np.array([[0, 1j], [1j, 0]]), "complex")


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_minimizers_satisfy_sign_condition(n, seed):
    rng = np.random.default_rng(seed)
    v = verify_theorem(symmetric(n, rng), "real")
    assert v.holds and v.minimizers_checked >= 2
    v = verify_theorem(hermitian(min(n, 4), rng), "complex")
    assert v.holds and v.minimizers_checked >= 4


def test_verify_json():
    out = verify_theorem(SWAP, "real").to_json()
    assert out["holds"] is True and out["violations"] == []
    assert out["instance"] == {"n": 2, "flavor": "real", "min_value": -2.0}


def test_corner_examples():
    rep = is_corner_positive(np.eye(3))
    assert rep.corner_positive and rep.witness is None and rep.value == 3
    rep = is_corner_positive(SWAP)
    assert not rep.corner_positive
    np.testing.assert_array_equal(rep.witness, [1, -1])
    rep = is_corner_positive([[1, 1], [1, 0]])
    assert not rep.corner_positive and rep.value == -1
    np.testing.assert_array_equal(rep.witness, [1, -1])
    with pytest.raises(ValueError):
        is_corner_positive(np.zeros((25, 25)))
    with pytest.raises(ValueError):
        is_corner_positive([[0, 1j], [-1j, 0]])


def test_census_examples():
    c = census(Network(SWAP))
    assert rows(c.stable) == {(1, 1), (-1, -1)}
    assert rows(c.anti_stable) == {(1, -1), (-1, 1)}
    c = census(Network(np.zeros((2, 2))))
    assert rows(c.stable) == {(1, 1)}
    # -Sgn(0) = -1, so the all-minus state is the lone anti-stable one
    assert rows(c.anti_stable) == {(-1, -1)}
    assert c.to_json()["stable_count"] == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1), st.sampled_from(["real", "complex"]))
def test_census_matches_pointwise_predicates(n, seed, flavor):
    rng = np.random.default_rng(seed)
    if flavor == "complex":
        n = min(n, 3)
    net = conforming_network(n, rng, flavor)
    c = census(net)
    spins = [1.0, -1.0] if flavor == "real" else list(QUATERNARY)
    expect_st, expect_an = set(), set()
    for x in itertools.product(spins, repeat=n):
        if is_stable(net, np.array(x)):
            expect_st.add(x)
        if is_anti_stable(net, np.array(x)):
            expect_an.add(x)
    assert rows(c.stable) == expect_st
    assert rows(c.anti_stable) == expect_an


def test_census_with_clamp():
    net = Network(SWAP)
    c = census(net, {1: 1.0})
    assert c.vertex_count == 2
    # node 1 is held at +1 and excluded from the predicate
    assert rows(c.stable) == {(1, 1)}
    assert rows(c.anti_stable) == {(-1, 1)}
    with pytest.raises(ValueError):
        census(net, {0: 1.0, 1: 1.0})


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32 - 1))
def test_serial_fixed_points_appear_in_census(n, seed):
    rng = np.random.default_rng(seed)
    net = Network(hollow(symmetric(n, rng)))
    traj = run_serial(net, random_vertex(n, seed), "anti")
    assert traj.outcome == FIXED_POINT
    assert tuple(traj.final) in rows(census(net).anti_stable)
    floor = brute_force_extrema(net.W, "real").min_value
    assert energy(net, traj.final) >= floor - 1e-12


@pytest.mark.parametrize("S", [1, 3, 5, 7])
def test_sum_of_outer_products_is_corner_positive(S):
    from hqf.synthesis import hadamard_patterns, synthesize_real

    ps = hadamard_patterns(8, S, "real")
    W = synthesize_real(ps, "stable")
    assert is_corner_positive(W + S * np.eye(8)).corner_positive
