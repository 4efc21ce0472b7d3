import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hqf.forms import eval_form
from hqf.hypercube import QUATERNARY
from hqf.toeplitz import (
    ToeplitzSpec,
    eval_toeplitz_complex,
    eval_toeplitz_real,
    toeplitz_dense,
)


def naive_dense(spec):
    n = spec.n
    t = spec.first_row
    M = np.zeros((n, n), dtype=t.dtype)
    for i in range(n):
        for j in range(n):
            if j >= i:
                M[i, j] = t[j - i]
            else:
                M[i, j] = np.conj(t[i - j]) if spec.kind == "hermitian" else t[i - j]
    return M


def test_dense_examples():
    np.testing.assert_array_equal(toeplitz_dense(ToeplitzSpec([1, 2])), [[1, 2], [2, 1]])
    np.testing.assert_array_equal(
        toeplitz_dense(ToeplitzSpec(np.array([1, 1j]), "hermitian")), [[1, 1j], [-1j, 1]]
    )
    a, b, c = 3.0, 5.0, 7.0
    np.testing.assert_array_equal(
        toeplitz_dense(ToeplitzSpec([a, b, c])), [[a, b, c], [b, a, b], [c, b, a]]
    )


def test_real_examples():
    spec = ToeplitzSpec([1, 2])
    assert eval_toeplitz_real(spec, [1, -1]) == -2
    assert eval_toeplitz_real(spec, [1, 1]) == 6
    spec = ToeplitzSpec([0, 1, 1])
    x = np.array([1, -1, 1])
    assert eval_toeplitz_real(spec, x) == -2
    assert x @ toeplitz_dense(spec) @ x == -2


def test_complex_examples():
    spec = ToeplitzSpec(np.array([1, 1j]), "hermitian")
    x = np.array([1 + 1j, 1 - 1j])
    assert eval_form(toeplitz_dense(spec), x) == 8
    assert eval_toeplitz_complex(spec, x) == 8
    spec = ToeplitzSpec(np.array([1, 0]), "hermitian")
    for a in QUATERNARY:
        for b in QUATERNARY:
            assert eval_toeplitz_complex(spec, np.array([a, b])) == 4
    spec = ToeplitzSpec(np.array([0, 1]), "hermitian")
    assert eval_toeplitz_complex(spec, np.array([1 + 1j, 1 + 1j])) == 4


def test_kind_checks():
    with pytest.raises(ValueError):
        eval_toeplitz_real(ToeplitzSpec(np.array([1, 1j]), "hermitian"), [1, 1])
    with pytest.raises(ValueError):
        eval_toeplitz_complex(ToeplitzSpec([1, 2]), [1 + 1j, 1 + 1j])
    with pytest.raises(ValueError):
        ToeplitzSpec(np.array([1j, 0]), "hermitian")
    with pytest.raises(ValueError):
        ToeplitzSpec(np.array([1, 1j]), "real")
    with pytest.raises(ValueError):
        eval_toeplitz_real(ToeplitzSpec([1, 2]), [1, 1, 1])


def test_spec_json_roundtrip():
    spec = ToeplitzSpec(np.array([2, 1 - 1j, 0.5j]), "hermitian")
    back = ToeplitzSpec.from_json(spec.to_json())
    np.testing.assert_array_equal(back.first_row, spec.first_row)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1), st.sampled_from(["real", "hermitian"]))
def test_structured_matches_dense(n, seed, kind):
    rng = np.random.default_rng(seed)
    row = rng.uniform(-1, 1, n)
    if kind == "hermitian":
        row = row + 1j * np.concatenate([[0], rng.uniform(-1, 1, n - 1)])
    spec = ToeplitzSpec(row, kind)
    M = toeplitz_dense(spec)
    np.testing.assert_array_equal(M, naive_dense(spec))
    for _ in range(10):
        if kind == "real":
            x = rng.choice([-1.0, 1.0], n)
            assert abs(eval_toeplitz_real(spec, x) - x @ M @ x) <= 1e-9
        else:
            x = QUATERNARY[rng.integers(0, 4, n)]
            got = eval_toeplitz_complex(spec, x)
            assert isinstance(got, float)
            assert abs(got - np.vdot(x, M @ x)) <= 1e-9


@pytest.mark.parametrize("kind", ["real", "hermitian"])
def test_diagonal_term(kind):
    n = 5
    spec = ToeplitzSpec(np.array([1.5, 0, 0, 0, 0], dtype=complex if kind == "hermitian" else float), kind)
    rng = np.random.default_rng(0)
    for _ in range(5):
        if kind == "real":
            assert eval_toeplitz_real(spec, rng.choice([-1.0, 1.0], n)) == n * 1.5
        else:
            assert eval_toeplitz_complex(spec, QUATERNARY[rng.integers(0, 4, n)]) == 2 * n * 1.5
