"""Exhaustive ground truth over small hypercubes.

Every routine scans the cube in fixed-size blocks of vertices (see
`hqf.hypercube` for the enumeration order).  Blocks are independent, so
they can be spread over threads; results are merged in block order and do
not depend on the number of workers.  ``HQF_THREADS`` sets the default
worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .forms import HERMITIAN_ATOL, as_square, form_values, hollow_reduce, is_hermitian
from .hypercube import (
    MAX_COMPLEX_ENUM,
    MAX_REAL_ENUM,
    csgn_array,
    sgn_array,
    vertex_block,
    vertex_count,
    vertex_to_json,
)
from .network import Network
from .stability import SlackReport, minimality_slack

BLOCK = 1 << 15


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HQF_THREADS", "1")))
    except ValueError:
        return 1


def _check_cap(n: int, kind: str) -> None:
    cap = MAX_REAL_ENUM if kind == "real" else MAX_COMPLEX_ENUM
    if n > cap:
        raise ValueError(f"n={n} exceeds the {kind} enumeration cap of {cap}")


def _scan(n: int, kind: str, fn: Callable[[int, np.ndarray], object], workers: int | None):
    """Apply ``fn(offset, block)`` over the cube, results in block order."""
    _check_cap(n, kind)
    total = vertex_count(n, kind)
    starts = range(0, total, BLOCK)

    def run(start):
        return fn(start, vertex_block(n, kind, start, min(start + BLOCK, total)))

    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(starts) == 1:
        return [run(s) for s in starts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, starts))


def _flavor(A: np.ndarray, flavor: str | None) -> str:
    if flavor is None:
        return "complex" if np.iscomplexobj(A) else "real"
    if flavor not in ("real", "complex"):
        raise ValueError(f"unknown flavor {flavor!r}")
    if flavor == "real" and np.iscomplexobj(A):
        raise ValueError("real flavor needs a real matrix")
    return flavor


def tie_tolerance(A: np.ndarray) -> float:
    """Values this close to an extremum count as attaining it.

    Symmetric vertices (x and -x, or x and jx) give the same value in
    exact arithmetic but BLAS may round them differently.
    """
    return 1e-12 * (1.0 + 2.0 * float(np.sum(np.abs(A))))


@dataclass
class ExtremaReport:
    """Global extrema of ``x* A x`` over a whole cube.

    Attaining vertices are stored as enumeration indices and materialised
    on demand.
    """

    n: int
    flavor: str
    min_value: float
    max_value: float
    argmin_index: np.ndarray
    argmax_index: np.ndarray
    vertex_count: int
    tolerance: float = 0.0

    @property
    def argmins(self) -> np.ndarray:
        return _vertices(self.n, self.flavor, self.argmin_index)

    @property
    def argmaxes(self) -> np.ndarray:
        return _vertices(self.n, self.flavor, self.argmax_index)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "flavor": self.flavor,
            "min_value": self.min_value,
            "max_value": self.max_value,
            "argmins": [vertex_to_json(v) for v in self.argmins],
            "argmaxes": [vertex_to_json(v) for v in self.argmaxes],
            "vertex_count": self.vertex_count,
        }


def _vertices(n: int, kind: str, idx: np.ndarray) -> np.ndarray:
    if len(idx) == 0:
        return vertex_block(n, kind, 0, 0)
    return np.concatenate([vertex_block(n, kind, int(i), int(i) + 1) for i in idx])


def brute_force_extrema(A, flavor: str | None = None, workers: int | None = None) -> ExtremaReport:
    """Exact min and max of the form over the cube, with all attaining vertices.

    For a non-Hermitian complex matrix the real part of ``x* A x`` (the
    Hermitian-part form) is what gets extremised.
    """
    A = as_square(A)
    kind = _flavor(A, flavor)
    n = A.shape[0]
    A = A.astype(complex if kind == "complex" else float)
    tol = tie_tolerance(A)

    def block(start, X):
        vals = form_values(A, X)
        lo, hi = vals.min(), vals.max()
        near_lo = np.flatnonzero(vals <= lo + tol)
        near_hi = np.flatnonzero(vals >= hi - tol)
        return (lo, start + near_lo, vals[near_lo], hi, start + near_hi, vals[near_hi])

    parts = _scan(n, kind, block, workers)
    lo = min(p[0] for p in parts)
    hi = max(p[3] for p in parts)
    amin = np.concatenate([p[1][p[2] <= lo + tol] for p in parts])
    amax = np.concatenate([p[4][p[5] >= hi - tol] for p in parts])
    return ExtremaReport(
        n=n,
        flavor=kind,
        min_value=float(lo),
        max_value=float(hi),
        argmin_index=amin,
        argmax_index=amax,
        vertex_count=vertex_count(n, kind),
        tolerance=tol,
    )


@dataclass
class TheoremVerdict:
    """Whether every global minimiser satisfies the sign condition ``u = -Sgn(Cu)``
    in its tie-robust slack form."""

    descriptor: dict
    minimizers_checked: int
    violations: list[tuple[np.ndarray, SlackReport]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "instance": self.descriptor,
            "minimizers_checked": self.minimizers_checked,
            "holds": self.holds,
            "violations": [
                {"vertex": vertex_to_json(v), "slack": rep.to_json()} for v, rep in self.violations
            ],
        }


def verify_theorem(E, flavor: str | None = None, workers: int | None = None) -> TheoremVerdict:
    """Check the minimiser sign condition on every brute-force minimiser of ``E``."""
    E = as_square(E)
    kind = _flavor(E, flavor)
    if kind == "complex" and not is_hermitian(E, atol=HERMITIAN_ATOL):
        raise ValueError("complex verification needs a Hermitian matrix")
    ext = brute_force_extrema(E, kind, workers)
    C = hollow_reduce(E, kind).C
    violations = []
    mins = ext.argmins
    for u in mins:
        rep = minimality_slack(C, u, tol=ext.tolerance)
        if not rep.all_satisfied:
            violations.append((u, rep))
    descriptor = {"n": ext.n, "flavor": kind, "min_value": ext.min_value}
    return TheoremVerdict(descriptor=descriptor, minimizers_checked=len(mins), violations=violations)


@dataclass
class CornerReport:
    corner_positive: bool
    witness: np.ndarray | None
    value: float  # form value at the witness, or the minimum when positive

    def to_json(self) -> dict:
        return {
            "corner_positive": self.corner_positive,
            "witness": None if self.witness is None else vertex_to_json(self.witness),
            "value": self.value,
        }


def is_corner_positive(B, workers: int | None = None) -> CornerReport:
    """``x^T B x >= 0`` at every real vertex?  The witness, if any, is the
    first minimising vertex in enumeration order."""
    B = as_square(B)
    if np.iscomplexobj(B):
        raise ValueError("corner positivity is defined for real matrices")
    ext = brute_force_extrema(B, "real", workers)
    if ext.min_value < 0:
        return CornerReport(False, ext.argmins[0], ext.min_value)
    return CornerReport(True, None, ext.min_value)


@dataclass
class Census:
    """Every cube vertex classified by the literal stability predicates."""

    stable: np.ndarray
    anti_stable: np.ndarray
    vertex_count: int
    clamped: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "stable": [vertex_to_json(v) for v in self.stable],
            "anti_stable": [vertex_to_json(v) for v in self.anti_stable],
            "stable_count": len(self.stable),
            "anti_stable_count": len(self.anti_stable),
        }


def census(net: Network, clamped: Mapping[int, complex] | None = None, workers: int | None = None) -> Census:
    """Classify all states as stable / anti-stable for ``net``.

    ``clamped`` maps node indices to fixed values: only states holding
    those values are enumerated, and clamped nodes are left out of the
    predicate (they are never updated).
    """
    clamped = dict(clamped or {})
    n = net.n
    free = [i for i in range(n) if i not in clamped]
    kind = net.flavor
    dtype = complex if kind == "complex" else float
    sign = csgn_array if kind == "complex" else sgn_array
    W, T = net.W, net.T

    def block(start, Y):
        X = np.empty((Y.shape[0], n), dtype=dtype)
        X[:, free] = Y
        for i, val in clamped.items():
            X[:, i] = val
        target = sign(X @ W.T - T)
        Xf, tf = X[:, free], target[:, free]
        st = np.all(Xf == tf, axis=1)
        an = np.all(Xf == -tf, axis=1)
        return X[st], X[an]

    if not free:
        raise ValueError("census needs at least one free node")
    parts = _scan(len(free), kind, block, workers)
    empty = np.empty((0, n), dtype=dtype)
    return Census(
        stable=np.concatenate([p[0] for p in parts]) if parts else empty,
        anti_stable=np.concatenate([p[1] for p in parts]) if parts else empty,
        vertex_count=vertex_count(len(free), kind),
        clamped=clamped,
    )
