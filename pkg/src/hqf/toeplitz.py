"""Toeplitz and Hermitian-Toeplitz forms evaluated from the first row.

With ``t = first_row`` and lag sums ``s_d = sum_i conj(x_i) x_{i+d}``:

    x^T T x = n t_0 + 2 sum_{d>=1} t_d s_d                 (real cube)
    x* T x  = 2n t_0 + sum_{d>=1} (t_d s_d + conj(t_d s_d))  (complex cube)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import toeplitz

from .hypercube import as_qspin_vector, as_spin_vector

ToeplitzKind = Literal["real", "hermitian"]


@dataclass(frozen=True)
class ToeplitzSpec:
    first_row: np.ndarray
    kind: ToeplitzKind = "real"

    def __post_init__(self):
        row = np.asarray(self.first_row)
        if row.ndim != 1 or row.size == 0:
            raise ValueError("first row must be a non-empty vector")
        if not np.all(np.isfinite(row)):
            raise ValueError("first row has NaN or infinite entries")
        if self.kind == "real":
            if np.iscomplexobj(row) and np.any(row.imag != 0):
                raise ValueError("real Toeplitz spec with complex entries")
            row = np.real(row).astype(float)
        elif self.kind == "hermitian":
            row = row.astype(complex)
            if row[0].imag != 0:
                raise ValueError("Hermitian Toeplitz spec needs a real leading entry")
        else:
            raise ValueError(f"unknown Toeplitz kind {self.kind!r}")
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return self.first_row.shape[0]

    @classmethod
    def from_json(cls, obj: dict) -> "ToeplitzSpec":
        kind = obj.get("kind", "real")
        row = obj.get("first_row")
        if isinstance(row, dict):
            re = np.asarray(row["re"], dtype=float)
            im = row.get("im")
            row = re if im is None else re + 1j * np.asarray(im, dtype=float)
        elif row is None:
            raise ValueError("Toeplitz JSON needs 'first_row'")
        return cls(np.asarray(row), kind)

    def to_json(self) -> dict:
        row = self.first_row
        return {
            "kind": self.kind,
            "first_row": {"re": np.real(row).tolist(), "im": np.imag(row).tolist()},
        }


def toeplitz_dense(spec: ToeplitzSpec) -> np.ndarray:
    if spec.kind == "real":
        return toeplitz(spec.first_row)
    # first column is the conjugated first row
    return toeplitz(spec.first_row.conj(), spec.first_row)


def _lag_sums(x: np.ndarray) -> np.ndarray:
    # correlate(x, x)[n-1+d] = sum_i x[i+d] * conj(x[i])
    n = x.shape[0]
    return np.correlate(x, x, mode="full")[n:]


def eval_toeplitz_real(spec: ToeplitzSpec, x) -> float:
    if spec.kind != "real":
        raise ValueError("eval_toeplitz_real needs a real Toeplitz spec")
    x = as_spin_vector(x)
    if x.shape[0] != spec.n:
        raise ValueError(f"vector of length {x.shape[0]} for a Toeplitz spec of order {spec.n}")
    t = spec.first_row
    return float(spec.n * t[0] + 2 * np.dot(t[1:], _lag_sums(x)))


def eval_toeplitz_complex(spec: ToeplitzSpec, x) -> float:
    if spec.kind != "hermitian":
        raise ValueError("eval_toeplitz_complex needs a Hermitian Toeplitz spec")
    x = as_qspin_vector(x)
    if x.shape[0] != spec.n:
        raise ValueError(f"vector of length {x.shape[0]} for a Toeplitz spec of order {spec.n}")
    t = spec.first_row
    upper = complex(np.dot(t[1:], _lag_sums(x)))
    # the lower-triangle sum is the exact conjugate of the upper one
    lower = upper.conjugate()
    return float(2 * spec.n * t[0].real + (upper + lower).real)


def eval_toeplitz(spec: ToeplitzSpec, x) -> float:
    if spec.kind == "real":
        return eval_toeplitz_real(spec, x)
    return eval_toeplitz_complex(spec, x)
