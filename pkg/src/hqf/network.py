"""The network pair (W, T) in its real and complex flavors."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .forms import (
    HERMITIAN_ATOL,
    Flavor,
    as_square,
    hollow_reduce,
    is_hermitian,
    matrix_from_json,
    matrix_to_json,
)
from .hypercube import as_vertex


@dataclass(frozen=True, eq=False)
class Network:
    """Weights ``W`` and thresholds ``T``.

    ``W`` must be symmetric (real flavor) or Hermitian (complex flavor) with
    a nonnegative diagonal.  ``T`` defaults to zero.
    """

    W: np.ndarray
    T: np.ndarray | None = None
    flavor: Flavor | None = None
    C: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        W = as_square(self.W)
        flavor = self.flavor or ("complex" if np.iscomplexobj(W) or np.iscomplexobj(self.T) else "real")
        if flavor not in ("real", "complex"):
            raise ValueError(f"unknown flavor {flavor!r}")
        n = W.shape[0]
        if flavor == "real" and np.iscomplexobj(W):
            raise ValueError("real network with complex weights")
        if not is_hermitian(W, atol=HERMITIAN_ATOL):
            kind = "symmetric" if flavor == "real" else "Hermitian"
            raise ValueError(f"weight matrix is not {kind}")
        if np.any(np.real(np.diag(W)) < 0):
            raise ValueError("weight matrix has a negative diagonal entry")
        dtype = float if flavor == "real" else complex
        T = np.zeros(n, dtype=dtype) if self.T is None else np.asarray(self.T)
        if T.shape != (n,):
            raise ValueError(f"threshold vector of shape {T.shape} for n={n}")
        if not np.all(np.isfinite(T)):
            raise ValueError("threshold vector has NaN or infinite entries")
        if flavor == "real" and np.iscomplexobj(T):
            if np.any(T.imag != 0):
                raise ValueError("real network with complex thresholds")
            T = T.real
        W = W.astype(dtype)
        T = T.astype(dtype)
        W.flags.writeable = False
        T.flags.writeable = False
        C = hollow_reduce(W, flavor).C.astype(dtype)
        C.flags.writeable = False
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return self.W.shape[0]

    def vertex(self, v) -> np.ndarray:
        """Validate ``v`` as a state of this network."""
        v = as_vertex(v, self.flavor)
        if v.shape != (self.n,):
            raise ValueError(f"state of length {v.shape[0]} for a network of order {self.n}")
        return v

    def hollow(self) -> "Network":
        """The same network with the weight diagonal dropped."""
        return Network(self.C, self.T, self.flavor)

    def to_json(self) -> dict:
        W = matrix_to_json(self.W)
        if self.flavor == "complex" and "im" not in W:
            W["im"] = np.zeros_like(self.W.real).tolist()
        T = {"re": np.real(self.T).tolist()}
        if self.flavor == "complex":
            T["im"] = np.imag(self.T).tolist()
        return {"flavor": self.flavor, "W": W, "T": T}

    @classmethod
    def from_json(cls, obj: dict) -> "Network":
        if not isinstance(obj, dict) or "W" not in obj:
            raise ValueError("network JSON needs a 'W' field")
        flavor = obj.get("flavor", "real")
        W = matrix_from_json(obj["W"])
        T = obj.get("T")
        if T is None:
            Tv = None
        elif isinstance(T, dict):
            re = np.asarray(T.get("re", []), dtype=float)
            im = T.get("im")
            Tv = re if im is None else re + 1j * np.asarray(im, dtype=float)
        else:
            Tv = np.asarray(T, dtype=float)
        return cls(W, Tv, flavor)
