"""Outer-product weight matrices that store orthogonal patterns.

For S mutually orthogonal real patterns of length n (so ``X^T X = n``),
``W = sum_j (X_j X_j^T - I)`` satisfies ``W X_k = (n - S) X_k`` and every
pattern is a stable state when ``S < n``.  Negating W gives anti-stable
storage.  The complex version subtracts ``2I`` per pattern because
``|x_i|^2 = 2`` on the complex cube, giving ``W X_k = (2n - 2S) X_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import hadamard

from .hypercube import as_qspin_vector, as_spin_vector, vertex_from_json, vertex_to_json

Kind = Literal["stable", "anti"]


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class PatternSet:
    """Patterns stored one per row of ``X``."""

    X: np.ndarray
    flavor: Literal["real", "complex"]

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X))
        if self.flavor == "real":
            rows = [as_spin_vector(x) for x in X]
        elif self.flavor == "complex":
            rows = [as_qspin_vector(x) for x in X]
        else:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "X", np.array(rows))

    @property
    def S(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @classmethod
    def from_json(cls, obj: dict) -> "PatternSet":
        pats = obj.get("patterns")
        if not pats:
            raise ValueError("pattern JSON needs a non-empty 'patterns' list")
        flavor = obj.get("flavor", "complex" if isinstance(pats[0], dict) else "real")
        return cls(np.array([vertex_from_json(p) for p in pats]), flavor)

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "patterns": [vertex_to_json(x) for x in self.X]}


@dataclass(frozen=True)
class PatternReport:
    gram: np.ndarray  # X_j* X_k, computed exactly
    bad_pairs: list[tuple[int, int, complex]]
    norms: list[float]

    @property
    def orthogonal(self) -> bool:
        return not self.bad_pairs

    def to_json(self) -> dict:
        return {
            "orthogonal": self.orthogonal,
            "bad_pairs": [
                {"pair": [j, k], "inner_product": _num(ip)} for j, k, ip in self.bad_pairs
            ],
            "norms": self.norms,
        }


def _num(z):
    z = complex(z)
    return int(z.real) if z.imag == 0 else {"re": int(z.real), "im": int(z.imag)}


def check_patterns(ps: PatternSet) -> PatternReport:
    """Report every non-orthogonal pair (0-based) and each ``X_j* X_j``.

    Spin entries are small integers, so the Gram matrix is exact in
    floating point and compared against zero without tolerance.
    """
    G = ps.X.conj() @ ps.X.T
    bad = [
        (j, k, complex(G[j, k]))
        for j in range(ps.S)
        for k in range(j + 1, ps.S)
        if G[j, k] != 0
    ]
    return PatternReport(gram=G, bad_pairs=bad, norms=[float(np.real(G[j, j])) for j in range(ps.S)])


def _validate(ps: PatternSet) -> None:
    rep = check_patterns(ps)
    if rep.bad_pairs:
        j, k, ip = rep.bad_pairs[0]
        raise SynthesisError(f"patterns {j} and {k} are not orthogonal (inner product {_num(ip)})")
    if ps.S >= ps.n:
        raise SynthesisError(f"need fewer patterns than nodes, got S={ps.S} for n={ps.n}")


def synthesize_real(ps: PatternSet, kind: Kind = "stable") -> np.ndarray:
    if ps.flavor != "real":
        raise SynthesisError("synthesize_real needs real patterns")
    _validate(ps)
    W = ps.X.T @ ps.X - ps.S * np.eye(ps.n)
    return _orient(W, kind)


def synthesize_complex(ps: PatternSet, kind: Kind = "stable") -> np.ndarray:
    if ps.flavor != "complex":
        raise SynthesisError("synthesize_complex needs complex patterns")
    _validate(ps)
    W = ps.X.T @ ps.X.conj() - 2 * ps.S * np.eye(ps.n)
    return _orient(W, kind)


def synthesize(ps: PatternSet, kind: Kind = "stable") -> np.ndarray:
    return synthesize_real(ps, kind) if ps.flavor == "real" else synthesize_complex(ps, kind)


def _orient(W: np.ndarray, kind: Kind) -> np.ndarray:
    if kind == "stable":
        return W
    if kind == "anti":
        return -W + W.dtype.type(0)  # adding zero turns -0.0 into 0.0
    raise ValueError(f"kind must be 'stable' or 'anti', got {kind!r}")


def hadamard_patterns(n: int, S: int, flavor: Literal["real", "complex"] = "real") -> PatternSet:
    """The first S rows of the Sylvester Hadamard matrix of order n,
    scaled by ``1+j`` for the complex flavor."""
    H = hadamard(n).astype(float)[:S]
    return PatternSet(H if flavor == "real" else (1 + 1j) * H, flavor)
