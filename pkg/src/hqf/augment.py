"""Threshold elimination with a clamped dummy node.

A network (W, T) of order n becomes the zero-threshold network

    [[W,   -T], [-T^T, k]]         k = sum |T_i| + 1                 (real)
    [[W,   -S], [-S*,  k]]         k = sum |Re T_i| + |Im T_i| + 1   (complex)

of order n+1 with the dummy state fixed at +1 (real) or 1+j (complex),
where ``(1+j) S_i = T_i``.  The corner weight ``k`` keeps the dummy's
pre-activation at least 1 (componentwise) for every state of the other
nodes, so the dummy is self-consistent under stable-mode updates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forms import HERMITIAN_ATOL, as_square, is_hermitian
from .network import Network

CLAMP_REAL = 1.0
CLAMP_COMPLEX = 1 + 1j


def corner_weight(magnitudes) -> float:
    """``sum(magnitudes) + 1`` rounded up to the next float.

    Rounding to nearest could land one ulp below the exact sum and leave
    the dummy pre-activation a hair under 1.
    """
    exact = sum((Fraction(float(m)) for m in magnitudes), Fraction(0)) + 1
    k = float(exact)
    if Fraction(k) < exact:
        k = float(np.nextafter(k, np.inf))
    return k


def solve_dummy_weights(T) -> np.ndarray:
    """Solve ``(1+j) S_i = T_i`` componentwise.

    With ``T_i = a + jb`` and ``S_i = c + jd`` this is ``c - d = a``,
    ``c + d = b``: a 2x2 Hadamard system with inverse ``H_2 / 2``.
    """
    T = np.asarray(T, dtype=complex)
    a, b = T.real, T.imag
    c = (b + a) / 2
    d = (b - a) / 2
    return c + 1j * d


@dataclass(frozen=True, eq=False)
class AugmentedNetwork:
    """The (n+1)-node zero-threshold network and its clamp."""

    Wtilde: np.ndarray
    k: float
    clamp: complex | float
    flavor: str
    S: np.ndarray | None = None

    @property
    def n(self) -> int:
        """Order of the original network."""
        return self.Wtilde.shape[0] - 1

    @property
    def clamp_index(self) -> int:
        return self.n

    @property
    def network(self) -> Network:
        return Network(self.Wtilde, None, self.flavor)

    def embed(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.n,):
            raise ValueError(f"state of length {v.shape} for an augmented network of order {self.n}")
        dtype = complex if self.flavor == "complex" else float
        return np.append(v.astype(dtype), dtype(self.clamp))

    def project(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.n + 1,):
            raise ValueError(f"state of length {v.shape} for an augmented network of order {self.n}")
        if v[-1] != self.clamp:
            raise ValueError(f"dummy node holds {v[-1]!r}, expected clamp value {self.clamp!r}")
        return v[:-1].copy()

    def clamp_margin(self, v) -> tuple[Fraction, Fraction]:
        """Exact (real, imaginary) dummy pre-activation at ``embed(v)``.

        Both parts are at least 1 for every state (the imaginary part is
        0 in the real flavor)."""
        re = im = Fraction(0)
        for w, x in zip(self.Wtilde[-1], list(np.asarray(v, dtype=complex)) + [complex(self.clamp)]):
            wr, wi = Fraction(float(w.real)), Fraction(float(w.imag))
            xr, xi = Fraction(float(x.real)), Fraction(float(x.imag))
            re += wr * xr - wi * xi
            im += wr * xi + wi * xr
        return re, im

    def to_json(self) -> dict:
        out = self.network.to_json()
        out["augmented"] = {"k": self.k, "clamp_index": self.clamp_index}
        if self.flavor == "complex":
            out["augmented"]["clamp"] = {"re": 1, "im": 1}
            out["augmented"]["S"] = {"re": self.S.real.tolist(), "im": self.S.imag.tolist()}
        else:
            out["augmented"]["clamp"] = 1
        return out


def augment_real(W, T) -> AugmentedNetwork:
    W = as_square(W)
    if np.iscomplexobj(W) or not is_hermitian(W, atol=HERMITIAN_ATOL):
        raise ValueError("augment_real needs a real symmetric weight matrix")
    T = np.asarray(T, dtype=float)
    n = W.shape[0]
    if T.shape != (n,):
        raise ValueError(f"threshold vector of shape {T.shape} for n={n}")
    k = corner_weight(np.abs(T))
    Wt = np.zeros((n + 1, n + 1))
    Wt[:n, :n] = W
    Wt[:n, n] = -T
    Wt[n, :n] = -T
    Wt[n, n] = k
    return AugmentedNetwork(Wtilde=Wt, k=k, clamp=CLAMP_REAL, flavor="real")


def augment_complex(W, T) -> AugmentedNetwork:
    W = as_square(W).astype(complex)
    if not is_hermitian(W, atol=HERMITIAN_ATOL):
        raise ValueError("augment_complex needs a Hermitian weight matrix")
    T = np.asarray(T, dtype=complex)
    n = W.shape[0]
    if T.shape != (n,):
        raise ValueError(f"threshold vector of shape {T.shape} for n={n}")
    S = solve_dummy_weights(T)
    k = corner_weight(np.concatenate([np.abs(T.real), np.abs(T.imag)]))
    # |Re(conj(S_i) v_i)| <= |c_i| + |d_i|; this equals max(|a_i|, |b_i|) exactly
    # but the sums a +- b inside S can round up by an ulp
    k = max(k, corner_weight(np.concatenate([np.abs(S.real), np.abs(S.imag)])))
    Wt = np.zeros((n + 1, n + 1), dtype=complex)
    Wt[:n, :n] = W
    Wt[:n, n] = -S
    Wt[n, :n] = -S.conj()
    Wt[n, n] = k
    return AugmentedNetwork(Wtilde=Wt, k=k, clamp=CLAMP_COMPLEX, flavor="complex", S=S)


def augment(net: Network) -> AugmentedNetwork:
    if net.flavor == "complex":
        return augment_complex(net.W, net.T)
    return augment_real(net.W, net.T)
