"""Vertices of the real and complex hypercubes.

Real vertices are float64 arrays with entries in {-1, +1}.  Complex vertices
are complex128 arrays with entries in {1+j, 1-j, -1+j, -1-j}.

Enumeration order is lexicographic.  Vertex number ``k`` of the real cube
reads ``k`` as an n-bit integer, most significant bit first, with bit 0
mapping to +1 and bit 1 to -1, so ``n=2`` gives (+,+), (+,-), (-,+), (-,-).
The complex cube does the same with base-4 digits, digit ``d`` mapping to
``QUATERNARY[d]``.
"""
from __future__ import annotations

import math
from typing import Iterator, Literal

import numpy as np

MAX_REAL_ENUM = 24
MAX_COMPLEX_ENUM = 12

QUATERNARY = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])

Kind = Literal["real", "complex"]


def sgn(r: float) -> int:
    """Signum with the tie convention sgn(0) = +1."""
    r = float(r)
    if not math.isfinite(r):
        raise ValueError(f"sgn of non-finite value {r!r}")
    return 1 if r >= 0 else -1


def csgn(z: complex) -> complex:
    """Complex signum, applied separately to the real and imaginary parts."""
    z = complex(z)
    return complex(sgn(z.real), sgn(z.imag))


def sgn_array(h: np.ndarray) -> np.ndarray:
    """Vectorised `sgn`; returns float64 entries in {-1, +1}."""
    h = np.asarray(h, dtype=float)
    if not np.all(np.isfinite(h)):
        raise ValueError("sgn of non-finite value")
    return np.where(h >= 0, 1.0, -1.0)


def csgn_array(h: np.ndarray) -> np.ndarray:
    """Vectorised `csgn`; returns complex128 quaternary spins."""
    h = np.asarray(h, dtype=complex)
    return sgn_array(h.real) + 1j * sgn_array(h.imag)


def is_spin_vector(v) -> bool:
    v = np.asarray(v)
    if v.ndim != 1 or v.size == 0:
        return False
    if np.iscomplexobj(v):
        if np.any(v.imag != 0):
            return False
        v = v.real
    return bool(np.all((v == 1) | (v == -1)))


def is_qspin_vector(v) -> bool:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        return False
    return bool(np.all((np.abs(v.real) == 1) & (np.abs(v.imag) == 1)))


def as_spin_vector(v) -> np.ndarray:
    """Validate and return a real hypercube vertex as a float64 array."""
    if not is_spin_vector(v):
        raise ValueError(f"not a real hypercube vertex: {v!r}")
    return np.real(np.asarray(v)).astype(float)


def as_qspin_vector(v) -> np.ndarray:
    """Validate and return a complex hypercube vertex as a complex128 array."""
    if not is_qspin_vector(v):
        raise ValueError(f"not a complex hypercube vertex: {v!r}")
    return np.asarray(v, dtype=complex)


def as_vertex(v, kind: Kind) -> np.ndarray:
    if kind == "real":
        return as_spin_vector(v)
    if kind == "complex":
        return as_qspin_vector(v)
    raise ValueError(f"unknown kind {kind!r}")


def _check_dim(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > cap:
        raise ValueError(f"dimension {n} exceeds enumeration cap {cap}")


def real_block(n: int, start: int, stop: int) -> np.ndarray:
    """Real vertices ``start..stop-1`` in enumeration order, one per row."""
    _check_dim(n, MAX_REAL_ENUM)
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (idx[:, None] >> shifts) & 1
    return 1.0 - 2.0 * bits


def complex_block(n: int, start: int, stop: int) -> np.ndarray:
    """Complex vertices ``start..stop-1`` in enumeration order, one per row."""
    _check_dim(n, MAX_COMPLEX_ENUM)
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = 2 * np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] >> shifts) & 3
    return QUATERNARY[digits]


def vertex_count(n: int, kind: Kind) -> int:
    return 2**n if kind == "real" else 4**n


def vertex_block(n: int, kind: Kind, start: int, stop: int) -> np.ndarray:
    if kind == "real":
        return real_block(n, start, stop)
    if kind == "complex":
        return complex_block(n, start, stop)
    raise ValueError(f"unknown kind {kind!r}")


def iter_blocks(n: int, kind: Kind, block: int = 1 << 16) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, rows)`` covering the whole cube in enumeration order."""
    total = vertex_count(n, kind)
    vertex_block(n, kind, 0, 0)  # validates n against the cap
    for start in range(0, total, block):
        yield start, vertex_block(n, kind, start, min(start + block, total))


def vertices_real(n: int) -> Iterator[np.ndarray]:
    """All 2**n real vertices in lexicographic order."""
    for _, rows in iter_blocks(n, "real"):
        yield from rows


def vertices_complex(n: int) -> Iterator[np.ndarray]:
    """All 4**n complex vertices in lexicographic order."""
    for _, rows in iter_blocks(n, "complex"):
        yield from rows


def random_vertex(n: int, seed: int, kind: Kind = "real") -> np.ndarray:
    """A uniformly random vertex, fully determined by ``(n, seed, kind)``."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return random_vertex_rng(n, np.random.default_rng(seed), kind)


def random_vertex_rng(n: int, rng: np.random.Generator, kind: Kind = "real") -> np.ndarray:
    if kind == "real":
        return rng.choice([-1.0, 1.0], size=n)
    if kind == "complex":
        return QUATERNARY[rng.integers(0, 4, size=n)]
    raise ValueError(f"unknown kind {kind!r}")


def vertex_to_json(v) -> list | dict:
    v = np.asarray(v)
    if np.iscomplexobj(v):
        return {"re": [int(x) for x in v.real], "im": [int(x) for x in v.imag]}
    return [int(x) for x in v]


def vertex_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        re, im = obj.get("re"), obj.get("im")
        if re is None or im is None or len(re) != len(im):
            raise ValueError("complex vertex needs equal-length 're' and 'im'")
        return as_qspin_vector(np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float))
    return as_spin_vector(np.asarray(obj, dtype=float))
