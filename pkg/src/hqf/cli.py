"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
3 dynamics budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .augment import augment
from .dynamics import BUDGET_EXHAUSTED, FIXED_POINT, TWO_CYCLE, parallel_step, run_parallel, run_serial
from .forms import eval_form, hollow_reduce, matrix_from_json, matrix_to_json
from .hypercube import random_vertex_rng, vertex_block, vertex_count, vertex_from_json, vertex_to_json
from .network import Network
from .oracle import brute_force_extrema, census, is_corner_positive, verify_theorem
from .stability import is_anti_stable, is_stable
from .synthesis import PatternSet, SynthesisError, synthesize
from .toeplitz import ToeplitzSpec, eval_toeplitz, toeplitz_dense

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class ParseError(Exception):
    pass


class ValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load(path: str, builder):
    """Unreadable or structurally broken input is a parse error; well-formed
    JSON whose content fails validation is a validation error."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    try:
        return builder(obj)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"{path}: malformed content ({exc})") from None
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def _jsonable(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_jsonable, allow_nan=False)


def _emit(report: dict, fmt: str, out: str | None = None) -> None:
    text = _dumps(report) if fmt == "json" else _table(report)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _table(report: dict, indent: int = 0) -> str:
    rows = []
    width = max((len(k) for k in report), default=0)
    for key in sorted(report):
        val = report[key]
        pad = " " * indent
        if isinstance(val, dict):
            rows.append(f"{pad}{key}:")
            rows.append(_table(val, indent + 2))
        elif isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            rows.append(f"{pad}{key}: ({len(val)})")
            rows.extend(f"{pad}  {json.dumps(item, default=_jsonable)}" for item in val)
        else:
            rows.append(f"{pad}{key.ljust(width)}  {json.dumps(val, default=_jsonable)}")
    return "\n".join(rows)


def _header(args, **extra) -> dict:
    hdr = {"command": args.command, "version": __version__}
    hdr.update(extra)
    return hdr


def _matrix_flavor(A: np.ndarray, requested: str) -> str:
    if requested == "auto":
        return "complex" if np.iscomplexobj(A) else "real"
    if requested == "real" and np.iscomplexobj(A):
        raise ValidationError("matrix has imaginary entries but --flavor real was given")
    return requested


# ---------------------------------------------------------------- optimize


def cmd_optimize(args) -> int:
    A = None
    if args.matrix:
        A = _load(args.matrix, matrix_from_json)
        flavor = _matrix_flavor(A, args.flavor)
        red = hollow_reduce(A, flavor)
        net = Network(red.C, None, flavor)
    else:
        net = _load(args.net, Network.from_json)
    dyn = net.hollow()
    rng = np.random.default_rng(args.seed)
    budget = args.budget
    runs = []
    for r in range(args.restarts):
        v0 = random_vertex_rng(net.n, rng, net.flavor)
        if args.exec == "serial":
            order_seed = int(rng.integers(2**31)) if args.order == "random" else None
            traj = run_serial(net, v0, args.mode, args.order, order_seed, budget)
        else:
            traj = run_parallel(net, v0, args.mode, budget)
        runs.append(traj)

    def score(t):
        if A is None:
            return t.final_energy
        value = eval_form(A, t.final)
        return value.real if isinstance(value, complex) else value

    # lowest form value wins in anti mode, highest in stable mode; ties go to the earlier restart
    sign = 1.0 if args.mode == "anti" else -1.0
    best_i = min(range(len(runs)), key=lambda i: (sign * score(runs[i]), i))
    best = runs[best_i]
    predicate = is_anti_stable if args.mode == "anti" else is_stable
    passes = best.outcome == FIXED_POINT and predicate(dyn, best.final)
    if best.outcome == TWO_CYCLE:
        passes = bool(np.array_equal(parallel_step(net, parallel_step(net, best.final, args.mode), args.mode), best.final))
    report = {
        "config": _header(
            args,
            seed=args.seed,
            mode=args.mode,
            exec=args.exec,
            order=args.order,
            budget=budget if budget is not None else 4 * net.n,
            restarts=args.restarts,
        ),
        "n": net.n,
        "flavor": net.flavor,
        "restart": best_i,
        "initial_state": vertex_to_json(best.initial),
        "final_state": vertex_to_json(best.final),
        "energy": best.final_energy,
        "outcome": best.outcome,
        "flips": best.flips,
        "sweeps": best.sweeps,
        "converged_after": best.converged_after,
        "passes_predicate": bool(passes),
        "outcomes": [t.outcome for t in runs],
    }
    if A is not None:
        value = eval_form(A, best.final)
        report["form_value"] = value if isinstance(value, float) else {"re": value.real, "im": value.imag}
    if args.trace:
        Path(args.trace).write_text(best.to_jsonl())
    _emit(report, args.format, args.out)
    if any(t.outcome == BUDGET_EXHAUSTED for t in runs):
        print("error: dynamics budget exhausted", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# ------------------------------------------------------------------ oracle


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "census":
        net = _load(args.net, Network.from_json)
        try:
            result = census(net, workers=args.threads)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        body = result.to_json()
    else:
        A = _load(args.matrix, matrix_from_json)
        flavor = _matrix_flavor(A, args.flavor)
        try:
            if args.oracle_cmd == "extrema":
                body = brute_force_extrema(A, flavor, args.threads).to_json()
            elif args.oracle_cmd == "verify":
                body = verify_theorem(A, flavor, args.threads).to_json()
            else:
                body = is_corner_positive(A, args.threads).to_json()
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    report = {"config": _header(args, oracle=args.oracle_cmd), "report": body}
    _emit(report, args.format, args.out)
    if args.oracle_cmd == "verify" and not body["holds"]:
        return EXIT_VALIDATION
    return EXIT_OK


# ------------------------------------------------------------------- synth


def cmd_synth(args) -> int:
    ps = _load(args.patterns, PatternSet.from_json)
    try:
        W = synthesize(ps, args.kind)
    except SynthesisError as exc:
        raise ValidationError(str(exc)) from None
    net = Network(W, None, ps.flavor)
    out = net.to_json()
    if args.verify:
        predicate = is_stable if args.kind == "stable" else is_anti_stable
        ok = [bool(predicate(net, x)) for x in ps.X]
        gain = (ps.n - ps.S) * (1 if ps.flavor == "real" else 2)
        gain = gain if args.kind == "stable" else -gain
        eig = [bool(np.array_equal(W @ x, gain * x)) for x in ps.X]
        out["verification"] = {"patterns_pass": ok, "eigen_identity": eig, "gain": gain}
        if not (all(ok) and all(eig)):
            _emit(out, args.format, args.out)
            return EXIT_VALIDATION
    _emit(out, args.format, args.out)
    return EXIT_OK


# ----------------------------------------------------------------- augment


def cmd_augment(args) -> int:
    net = _load(args.net, Network.from_json)
    aug = augment(net)
    out = aug.to_json()
    if args.verify:
        if net.n > (10 if net.flavor == "real" else 5):
            raise ValidationError("--verify enumerates all states; n too large")
        orig = census(net)
        lifted = census(aug.network, {aug.clamp_index: aug.clamp})
        same_stable = _same_rows(orig.stable, lifted.stable[:, :-1])
        same_anti = _same_rows(orig.anti_stable, lifted.anti_stable[:, :-1])
        V = vertex_block(net.n, net.flavor, 0, vertex_count(net.n, net.flavor))
        parts = [aug.clamp_margin(v) for v in V]
        margin = min(min(re, im) if net.flavor == "complex" else re for re, im in parts)
        out["verification"] = {
            "stable_census_matches": same_stable,
            "anti_stable_census_matches": same_anti,
            "min_clamp_preactivation": float(margin),
        }
        if not (same_stable and same_anti and margin >= 1):
            _emit(out, args.format, args.out)
            return EXIT_VALIDATION
    _emit(out, args.format, args.out)
    return EXIT_OK


def _same_rows(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.all(a == b))


# ---------------------------------------------------------------- toeplitz


def cmd_toeplitz(args) -> int:
    spec = _load(args.spec, ToeplitzSpec.from_json)
    dense = toeplitz_dense(spec)
    if args.toeplitz_cmd == "dense":
        _emit(matrix_to_json(dense), args.format, args.out)
        return EXIT_OK
    x = _load(args.vector, vertex_from_json)
    if x.shape[0] != spec.n:
        raise ValidationError(f"vector of length {x.shape[0]} for a spec of order {spec.n}")
    try:
        value = eval_toeplitz(spec, x)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    report = {"config": _header(args), "kind": spec.kind, "n": spec.n, "value": value}
    status = EXIT_OK
    if args.verify:
        ref = eval_form(dense, x)
        ref = ref if isinstance(ref, float) else ref.real
        report["dense_value"] = ref
        report["agrees"] = abs(value - ref) <= 1e-9
        if not report["agrees"]:
            status = EXIT_VALIDATION
    _emit(report, args.format, args.out)
    return status


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hqf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--out", help="write the report here instead of stdout")

    o = sub.add_parser("optimize", help="run signum dynamics from seeded random starts")
    src = o.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="form matrix JSON, wrapped as a zero-threshold network")
    src.add_argument("--net", help="network JSON")
    o.add_argument("--flavor", choices=["auto", "real", "complex"], default="auto")
    o.add_argument("--mode", choices=["stable", "anti"], default="anti")
    o.add_argument("--exec", choices=["serial", "parallel"], default="serial")
    o.add_argument("--order", choices=["cyclic", "random"], default="cyclic")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--budget", type=int, help="max sweeps (serial) or steps (parallel); default 4n")
    o.add_argument("--restarts", type=int, default=1)
    o.add_argument("--trace", help="write the best run's trajectory as JSON lines")
    common(o)
    o.set_defaults(func=cmd_optimize)

    orc = sub.add_parser("oracle", help="exhaustive ground truth on small instances")
    osub = orc.add_subparsers(dest="oracle_cmd", required=True, parser_class=_Parser)
    for name, hlp in [
        ("extrema", "global min/max of the form"),
        ("verify", "check the minimiser sign condition"),
        ("corner", "corner positivity test"),
    ]:
        sp = osub.add_parser(name, help=hlp)
        sp.add_argument("--matrix", required=True)
        sp.add_argument("--flavor", choices=["auto", "real", "complex"], default="auto")
        sp.add_argument("--threads", type=int, default=None)
        common(sp)
    sp = osub.add_parser("census", help="classify every state of a network")
    sp.add_argument("--net", required=True)
    sp.add_argument("--threads", type=int, default=None)
    common(sp)
    orc.set_defaults(func=cmd_oracle)

    s = sub.add_parser("synth", help="weights storing orthogonal patterns")
    s.add_argument("--patterns", required=True)
    s.add_argument("--kind", choices=["stable", "anti"], default="stable")
    s.add_argument("--verify", action="store_true")
    common(s)
    s.set_defaults(func=cmd_synth)

    a = sub.add_parser("augment", help="eliminate thresholds with a clamped dummy node")
    a.add_argument("--net", required=True)
    a.add_argument("--verify", action="store_true")
    common(a)
    a.set_defaults(func=cmd_augment)

    t = sub.add_parser("toeplitz", help="Toeplitz form tools")
    tsub = t.add_subparsers(dest="toeplitz_cmd", required=True, parser_class=_Parser)
    sp = tsub.add_parser("dense", help="expand a first-row spec to a dense matrix")
    sp.add_argument("--spec", required=True)
    common(sp)
    sp = tsub.add_parser("eval", help="evaluate the structured form at a vertex")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--vector", required=True)
    sp.add_argument("--verify", action="store_true", help="cross-check against the dense form")
    common(sp)
    t.set_defaults(func=cmd_toeplitz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "restarts", 1) < 1:
        print("error: --restarts must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    if getattr(args, "budget", None) is not None and args.budget < 1:
        print("error: --budget must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
