"""Stable / anti-stable predicates and the first-order minimality slacks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .forms import HERMITIAN_ATOL, as_square, is_hermitian, is_hollow
from .hypercube import as_qspin_vector, as_spin_vector, csgn_array, sgn_array
from .network import Network


def preactivations(net: Network, v) -> np.ndarray:
    """``W v - T`` using the literal weight matrix, diagonal included."""
    v = net.vertex(v)
    return net.W @ v - net.T


def _target(net: Network, h: np.ndarray) -> np.ndarray:
    return csgn_array(h) if net.flavor == "complex" else sgn_array(h)


def _free(n: int, clamped: Iterable[int]) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[list(clamped)] = False
    return mask


def is_stable(net: Network, v, clamped: Iterable[int] = ()) -> bool:
    """``v == Sgn(W v - T)``, skipping any hard-clamped node indices."""
    v = net.vertex(v)
    mask = _free(net.n, clamped)
    return bool(np.all((v == _target(net, preactivations(net, v)))[mask]))


def is_anti_stable(net: Network, v, clamped: Iterable[int] = ()) -> bool:
    """``v == -Sgn(W v - T)``, skipping any hard-clamped node indices."""
    v = net.vertex(v)
    mask = _free(net.n, clamped)
    return bool(np.all((v == -_target(net, preactivations(net, v)))[mask]))


@dataclass(frozen=True)
class SlackReport:
    """Per-node slacks ``u_i (Cu)_i``.

    For complex states the slack of node i is the pair
    ``(Re u_i * Re (Cu)_i, Im u_i * Im (Cu)_i)``.  A minimiser has every
    slack <= 0; a flip of node i (or of one of its components) would lower
    the form by four times a positive slack.  Indices are 0-based.
    """

    slacks: np.ndarray
    all_satisfied: bool
    tie_indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "slacks": self.slacks.tolist(),
            "all_satisfied": self.all_satisfied,
            "tie_indices": list(self.tie_indices),
        }


def minimality_slack(C, u, tol: float = 0.0) -> SlackReport:
    """Slack report of ``u`` against a hollow symmetric/Hermitian ``C``.

    ``tol`` lets slacks up to that value count as satisfied; the default
    is the exact condition.
    """
    C = as_square(C)
    if not is_hollow(C):
        raise ValueError("minimality slack needs a zero-diagonal matrix")
    if not is_hermitian(C, atol=HERMITIAN_ATOL):
        raise ValueError("minimality slack needs a symmetric/Hermitian matrix")
    u = np.asarray(u)
    complex_state = np.iscomplexobj(u) and np.any(u.imag != 0)
    u = as_qspin_vector(u) if complex_state else as_spin_vector(u)
    if np.iscomplexobj(C) and not complex_state:
        raise ValueError("complex matrix needs a complex hypercube state")
    if u.shape[0] != C.shape[0]:
        raise ValueError(f"state of length {u.shape[0]} for a matrix of order {C.shape[0]}")
    h = C @ u
    if complex_state:
        slacks = np.stack([u.real * h.real, u.imag * h.imag], axis=1)
        ties = np.flatnonzero((h.real == 0) | (h.imag == 0))
    else:
        h = np.real(h)
        slacks = u * h
        ties = np.flatnonzero(h == 0)
    return SlackReport(
        slacks=slacks,
        all_satisfied=bool(np.all(slacks <= tol)),
        tie_indices=tuple(int(i) for i in ties),
    )
