"""Serial and fully parallel signum dynamics on (W, T) networks.

Stable mode sets ``v_i <- Sgn(H_i)``; anti mode sets ``v_i <- -Sgn(H_i)``,
where ``H_i = sum_j C_ij v_j - T_i`` and ``C`` is ``W`` with its diagonal
removed.  On the cube the diagonal only adds a constant to the form, and
leaving it in would let a positive ``w_ii`` break energy descent in anti
mode.

The energy

    G(v) = v^T C v - 2 T^T v                  (real)
    G(v) = Re(v* C v) - 2 Re(T* v)            (complex)

never decreases along a serial stable-mode run and never increases along
a serial anti-mode run.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from .hypercube import csgn_array, sgn_array, vertex_to_json
from .network import Network

Mode = Literal["stable", "anti"]
Outcome = Literal["fixed_point", "two_cycle", "budget_exhausted"]

FIXED_POINT = "fixed_point"
TWO_CYCLE = "two_cycle"
BUDGET_EXHAUSTED = "budget_exhausted"


def _check_mode(mode: str) -> float:
    if mode == "stable":
        return 1.0
    if mode == "anti":
        return -1.0
    raise ValueError(f"mode must be 'stable' or 'anti', got {mode!r}")


def _sign(net: Network, h):
    return csgn_array(h) if net.flavor == "complex" else sgn_array(h)


def pre_activation(net: Network, v, i: int):
    """``H_i`` computed from the hollow weights."""
    v = net.vertex(v)
    if not 0 <= i < net.n:
        raise IndexError(f"node {i} out of range for a network of order {net.n}")
    h = net.C[i] @ v - net.T[i]
    return complex(h) if net.flavor == "complex" else float(h)


def pre_activations(net: Network, v) -> np.ndarray:
    return net.C @ net.vertex(v) - net.T


def energy(net: Network, v) -> float:
    v = net.vertex(v)
    if net.flavor == "complex":
        return float(np.real(np.vdot(v, net.C @ v)) - 2 * np.real(np.vdot(net.T, v)))
    return float(v @ net.C @ v - 2 * net.T @ v)


def serial_step(net: Network, v, i: int, mode: Mode = "anti") -> np.ndarray:
    """Update node ``i`` only; returns a new state."""
    s = _check_mode(mode)
    h = pre_activation(net, v, i)
    out = net.vertex(v).copy()
    out[i] = s * _sign(net, np.array([h]))[0]
    return out


def parallel_step(net: Network, v, mode: Mode = "anti", clamped: Iterable[int] = ()) -> np.ndarray:
    """Update every node at once from the same pre-activations."""
    s = _check_mode(mode)
    v = net.vertex(v)
    out = s * _sign(net, pre_activations(net, v))
    clamped = list(clamped)
    out[clamped] = v[clamped]
    return out


@dataclass(frozen=True)
class Step:
    index: int
    node: int | None  # None for a fully parallel step
    state: np.ndarray
    energy: float
    changed: bool


@dataclass
class Trajectory:
    """A recorded run.  ``steps[k]`` holds the state after update ``k+1``."""

    initial: np.ndarray
    initial_energy: float
    mode: Mode
    execution: Literal["serial", "parallel"]
    steps: list[Step] = field(default_factory=list)
    outcome: Outcome = BUDGET_EXHAUSTED
    flips: int = 0
    sweeps: int = 0
    order: str = "cyclic"
    seed: int | None = None

    @property
    def final(self) -> np.ndarray:
        return self.steps[-1].state if self.steps else self.initial

    @property
    def final_energy(self) -> float:
        return self.steps[-1].energy if self.steps else self.initial_energy

    @property
    def energies(self) -> np.ndarray:
        return np.array([self.initial_energy] + [s.energy for s in self.steps])

    @property
    def converged_after(self) -> int:
        """Sweeps (serial) or steps (parallel) before the confirming one."""
        return self.sweeps - 1 if self.outcome == FIXED_POINT else self.sweeps

    def to_jsonl(self) -> str:
        lines = []
        for s in self.steps:
            lines.append(
                json.dumps(
                    {
                        "step": s.index,
                        "node": "all" if s.node is None else s.node,
                        "state": vertex_to_json(s.state),
                        "energy": s.energy,
                        "changed": s.changed,
                    },
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


def default_budget(n: int) -> int:
    return 4 * n


def run_serial(
    net: Network,
    v0,
    mode: Mode = "anti",
    order: Literal["cyclic", "random"] = "cyclic",
    seed: int | None = None,
    budget: int | None = None,
    clamped: Iterable[int] = (),
) -> Trajectory:
    """Sweep nodes one at a time until a whole sweep changes nothing.

    ``budget`` caps the number of sweeps (default ``4 n``).  Nodes listed
    in ``clamped`` are never updated.
    """
    s = _check_mode(mode)
    v = net.vertex(v0).copy()
    budget = default_budget(net.n) if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least one sweep")
    if order not in ("cyclic", "random"):
        raise ValueError(f"order must be 'cyclic' or 'random', got {order!r}")
    rng = np.random.default_rng(seed) if order == "random" else None
    frozen = set(clamped)
    free = np.array([i for i in range(net.n) if i not in frozen], dtype=int)

    traj = Trajectory(
        initial=v.copy(),
        initial_energy=energy(net, v),
        mode=mode,
        execution="serial",
        order=order,
        seed=seed if order == "random" else None,
    )
    step = 0
    for _ in range(budget):
        traj.sweeps += 1
        changes = 0
        nodes = rng.permutation(free) if rng is not None else free
        for i in nodes:
            i = int(i)
            h = net.C[i] @ v - net.T[i]
            new = s * _sign(net, np.array([h]))[0]
            changed = bool(new != v[i])
            if changed:
                v[i] = new
                changes += 1
            step += 1
            traj.steps.append(Step(step, i, v.copy(), energy(net, v), changed))
        traj.flips += changes
        if changes == 0:
            traj.outcome = FIXED_POINT
            break
    return traj


def run_parallel(
    net: Network,
    v0,
    mode: Mode = "anti",
    budget: int | None = None,
    clamped: Iterable[int] = (),
) -> Trajectory:
    """Iterate fully parallel updates until a fixed point or a 2-cycle.

    ``budget`` caps the number of parallel steps (default ``4 n``).
    """
    _check_mode(mode)
    v = net.vertex(v0).copy()
    budget = default_budget(net.n) if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least one step")
    clamped = list(clamped)
    traj = Trajectory(initial=v.copy(), initial_energy=energy(net, v), mode=mode, execution="parallel")
    prev = None
    for t in range(1, budget + 1):
        nxt = parallel_step(net, v, mode, clamped)
        changed = bool(np.any(nxt != v))
        traj.flips += int(np.count_nonzero(nxt != v))
        traj.steps.append(Step(t, None, nxt.copy(), energy(net, nxt), changed))
        traj.sweeps = t
        if not changed:
            traj.outcome = FIXED_POINT
            break
        if prev is not None and np.array_equal(nxt, prev):
            traj.outcome = TWO_CYCLE
            break
        prev, v = v, nxt
    return traj
