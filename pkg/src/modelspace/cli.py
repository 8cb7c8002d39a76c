"""Command-line entry point.

Exit codes: 0 success (all checks pass), 1 input or dimension errors (or a
failed check), 2 truncation insufficient.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .asymptotics import MAX_FIXED_POINT_DIM, compactness_score, decay_curve, feintuch_split_h2, fixed_point_gap, strong_probe
from .config import RunConfig, parse_config
from .errors import DimensionMismatch, ModelSpaceError, TooLarge, TruncationInsufficient
from .hardy import as_matrix, toeplitz_matrix
from .identities import run_identity_suite
from .inner import blaschke_degree
from .model_space import ModelSpaceBasis, OperatorOnK, extract_basis
from .sampling import random_operator, random_unit_vectors


def _load(args) -> tuple[RunConfig, ModelSpaceBasis]:
    cfg = parse_config(args.config)
    if cfg.truncation_note:
        print(f"WARNING: {cfg.truncation_note}", file=args.warn_stream)
    return cfg, extract_basis(cfg.inner, cfg.N, tail_tol=cfg.tail_tol)


def _seed(args, cfg) -> int:
    return cfg.seed if args.seed is None else args.seed


def _n_max(args, cfg, d) -> int:
    return args.nmax if args.nmax is not None else cfg.resolve_n_max(d)


def _operator(source: str, basis: ModelSpaceBasis, rng) -> OperatorOnK:
    d = basis.d
    if source == "random":
        m = random_operator(d, rng)
    elif source == "identity":
        m = np.eye(d, dtype=complex)
    else:
        m = as_matrix(io.read_matrix(source))
        if m.shape != (d, d):
            raise DimensionMismatch(f"operator in {source} is {m.shape[0]}x{m.shape[1]}, model space has d = {d}")
    return OperatorOnK(basis, m)


def cmd_build(args) -> int:
    cfg, basis = _load(args)
    if args.out:
        io.write_basis(args.out, basis)
    print(f"N={basis.N} d={basis.d} eig_gap={basis.eig_gap:.3e} isometry_defect={basis.isometry_defect:.3e}")
    return 0


def cmd_verify(args) -> int:
    args.warn_stream = sys.stdout
    cfg, basis = _load(args)
    checks = run_identity_suite(basis, seed=_seed(args, cfg), n_max=args.nmax)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed (N={basis.N}, d={basis.d})")
    return 0 if failed == 0 else 1


def cmd_decay(args) -> int:
    if not args.out:
        raise ModelSpaceError("decay needs --out")
    cfg, basis = _load(args)
    rng = np.random.default_rng(_seed(args, cfg))
    a = _operator(args.operator, basis, rng)
    n_max = _n_max(args, cfg, basis.d)
    tol = cfg.tol if args.tol is None else args.tol
    curve = decay_curve(a, n_max)
    score = compactness_score(a, n_max, tol)
    out = Path(args.out)
    io.atomic_write(out, io.curve_to_csv(curve))
    sidecar = dict(score.to_json(), d=basis.d, N=basis.N, seed=_seed(args, cfg), operator=args.operator, tol=tol)
    io.atomic_write(out.with_suffix(".json"), io.dumps_json(sidecar))
    return 0


def cmd_fixed_point(args) -> int:
    cfg = parse_config(args.config)
    degree = blaschke_degree(cfg.inner)
    if degree is not None and degree > MAX_FIXED_POINT_DIM:
        # the dimension is known without building the basis
        raise TooLarge(f"d = {degree} exceeds {MAX_FIXED_POINT_DIM}")
    cfg, basis = _load(args)
    report = fixed_point_gap(basis)
    text = io.dumps_json(report.to_json())
    if args.out:
        io.atomic_write(args.out, text)
    sys.stdout.write(text)
    return 0 if report.unique_zero else 1


def cmd_probe(args) -> int:
    cfg, basis = _load(args)
    rng = np.random.default_rng(_seed(args, cfg))
    a = _operator(args.operator, basis, rng)
    n_max = _n_max(args, cfg, basis.d)
    report = strong_probe(a, random_unit_vectors(args.probes, basis.d, rng), n_max)
    payload = {
        "adjoint_norm": report.adjoint_norm,
        "bound_holds": report.bound_holds,
        "max_excess": report.max_excess,
        "slack": report.slack,
        "probes": [
            {
                "operator_curve": [v for _, v in p.operator_curve.entries],
                "shift_curve": [v for _, v in p.shift_curve.entries],
                "max_excess": p.max_excess,
            }
            for p in report.probes
        ],
    }
    text = io.dumps_json(payload)
    if args.out:
        io.atomic_write(args.out, text)
    print(f"bound {'holds' if report.bound_holds else 'VIOLATED'}: max excess {report.max_excess:.3e}")
    return 0 if report.bound_holds else 1


def cmd_h2(args) -> int:
    symbol = io.read_symbol(args.symbol)
    t = toeplitz_matrix(symbol, args.N)
    if args.perturbation:
        p = io.read_matrix(args.perturbation)
        if p.shape != t.shape:
            raise DimensionMismatch(f"perturbation is {p.shape}, expected {t.shape}")
        t = t + p
    split = feintuch_split_h2(t, args.nstar, args.tol if args.tol is not None else 1e-12)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_matrix(out / "T1.csv", split.T1)
    io.write_matrix(out / "K.csv", split.K)
    report = {
        "N": args.N,
        "n_star": args.nstar,
        "symbol": io.symbol_to_json(split.symbol),
        "variances": {str(m): v for m, v in sorted(split.variances.items())},
        "max_variance": split.max_variance,
        "consistent": split.consistent,
    }
    io.atomic_write(out / "report.json", io.dumps_json(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modelspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, operator=False):
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", help="output path")
        p.add_argument("--nmax", type=int, help="iteration budget (default 4d)")
        p.add_argument("--tol", type=float, help="decay tolerance relative to ||A||")
        p.add_argument("--seed", type=int, help="overrides the config seed")
        if operator:
            p.add_argument("--operator", default="random", help="random, identity, or a matrix CSV path")
        return p

    common(sub.add_parser("build", help="construct the model-space basis")).set_defaults(func=cmd_build)
    common(sub.add_parser("verify", help="run the identity suite")).set_defaults(func=cmd_verify)
    common(sub.add_parser("decay", help="write the decay curve of S^*n A S^n"), True).set_defaults(func=cmd_decay)
    common(sub.add_parser("fixed-point", help="fixed-point gap certificate")).set_defaults(func=cmd_fixed_point)
    probe = common(sub.add_parser("probe", help="strong-convergence probes"), True)
    probe.add_argument("--probes", type=int, default=10)
    probe.set_defaults(func=cmd_probe)

    h2 = sub.add_parser("h2", help="Toeplitz-plus-remainder split on truncated H^2")
    h2.add_argument("--symbol", required=True, help="symbol CSV (m,re,im)")
    h2.add_argument("--perturbation", help="matrix CSV added to the Toeplitz matrix")
    h2.add_argument("--N", type=int, required=True)
    h2.add_argument("--nstar", type=int, required=True)
    h2.add_argument("--tol", type=float)
    h2.add_argument("--out", required=True, help="output directory")
    h2.set_defaults(func=cmd_h2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.warn_stream = getattr(args, "warn_stream", sys.stderr)
    try:
        return args.func(args)
    except TruncationInsufficient as exc:
        print(f"error: truncation insufficient: {exc}", file=sys.stderr)
        return 2
    except (ModelSpaceError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
