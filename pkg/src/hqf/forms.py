"""Square matrices, their (skew-)symmetric/Hermitian parts and forms on cubes.

Matrices are plain numpy arrays.  A real matrix is any array without a
nonzero imaginary part; the flavor is always computed, never trusted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Flavor = Literal["real", "complex"]

HERMITIAN_ATOL = 1e-12


def as_square(A) -> np.ndarray:
    """Validate a finite n-by-n matrix; complex input with zero imaginary
    part is returned as float."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.issubdtype(A.dtype, np.number):
        raise ValueError("matrix entries must be numeric")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has NaN or infinite entries")
    if np.iscomplexobj(A):
        if np.any(A.imag != 0):
            return A.astype(complex)
        A = A.real
    return A.astype(float)


def flavor_of(A) -> Flavor:
    return "complex" if np.iscomplexobj(as_square(A)) else "real"


def adjoint(A: np.ndarray) -> np.ndarray:
    return A.conj().T if np.iscomplexobj(A) else A.T


def is_hermitian(A, atol: float = 0.0) -> bool:
    """Symmetric for real input, Hermitian for complex input."""
    A = as_square(A)
    return bool(np.all(np.abs(A - adjoint(A)) <= atol))


def is_hollow(A) -> bool:
    return bool(np.all(np.diag(as_square(A)) == 0))


def decompose(A) -> tuple[np.ndarray, np.ndarray]:
    """Split ``A`` into its Hermitian and skew-Hermitian parts.

    For a real matrix these are the symmetric and antisymmetric parts.
    """
    A = as_square(A)
    At = adjoint(A)
    return (A + At) / 2, (A - At) / 2


@dataclass(frozen=True)
class HollowReduction:
    """Zero-diagonal Hermitian matrix plus the constant the diagonal adds on
    the cube: ``x^T A x = offset_real + x^T C x`` for real vertices and
    ``x* A x = offset_complex + x* C x`` for complex ones (Hermitian A)."""

    C: np.ndarray
    offset_real: float | None = None
    offset_complex: float | None = None

    @property
    def flavor(self) -> Flavor:
        return "real" if self.offset_real is not None else "complex"

    @property
    def offset(self) -> float:
        return self.offset_real if self.offset_real is not None else self.offset_complex


def hollow_reduce(A, flavor: Flavor | None = None) -> HollowReduction:
    """Hermitian part of ``A`` with the diagonal removed.

    On the real cube every ``x_i**2 == 1`` so the diagonal contributes the
    trace; on the complex cube ``|x_i|**2 == 2`` doubles it.
    """
    A = as_square(A)
    if flavor is None:
        flavor = "complex" if np.iscomplexobj(A) else "real"
    if flavor == "real" and np.iscomplexobj(A):
        raise ValueError("real reduction of a matrix with imaginary entries")
    sym, _ = decompose(A)
    diag = np.real(np.diag(sym))
    C = sym.copy()
    np.fill_diagonal(C, 0)
    if flavor == "real":
        return HollowReduction(C=C, offset_real=float(diag.sum()))
    if flavor == "complex":
        return HollowReduction(C=C.astype(complex), offset_complex=float(2 * diag.sum()))
    raise ValueError(f"unknown flavor {flavor!r}")


def eval_form(A, x) -> complex | float:
    """``x* A x``; a plain float when ``A`` is symmetric or Hermitian."""
    A = as_square(A)
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != A.shape[0]:
        raise ValueError(f"vector of length {x.shape} does not match {A.shape}")
    value = complex(np.vdot(x, A @ x))
    if is_hermitian(A) or not (np.iscomplexobj(A) or np.iscomplexobj(x)):
        return value.real
    return value


def form_values(A: np.ndarray, X: np.ndarray, real: bool = True) -> np.ndarray:
    """Row-wise ``x* A x`` for a block of vertices ``X``.

    With ``real=True`` only the real part is returned, which is the whole
    value for Hermitian ``A`` or real data.
    """
    vals = np.sum(X.conj() * (X @ A.T), axis=1)
    return np.real(vals) if real else vals


def matrix_to_json(A) -> dict:
    A = as_square(A)
    out = {"n": int(A.shape[0]), "re": np.real(A).tolist()}
    if np.iscomplexobj(A):
        out["im"] = np.imag(A).tolist()
    return out


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "re" not in obj:
        raise ValueError("matrix JSON needs a 're' field")
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = None if obj.get("im") is None else np.asarray(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix entries: {exc}") from None
    if re.ndim != 2 or re.shape[0] != re.shape[1]:
        raise ValueError(f"matrix JSON is not square: shape {re.shape}")
    if im is not None and im.shape != re.shape:
        raise ValueError("'re' and 'im' shapes differ")
    if "n" in obj and int(obj["n"]) != re.shape[0]:
        raise ValueError(f"declared n={obj['n']} but matrix has {re.shape[0]} rows")
    return as_square(re if im is None else re + 1j * im)
