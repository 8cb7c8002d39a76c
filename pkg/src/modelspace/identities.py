"""Numerical identity suite for a constructed model space.

Each check measures a residual and compares it against a fixed tolerance.
Checks with ``tol=None`` are informational and never fail the suite.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .asymptotics import (
    asymptotic_sequence,
    default_n_max,
    fixed_point_gap,
    strong_probe,
    unitary_equiv_check,
)
from .hardy import operator_norm, shift_matrix
from .inner import blaschke_zeros, evaluate
from .model_space import (
    ModelSpaceBasis,
    OperatorOnK,
    conjugate_kernel_vector,
    conjugation_apply,
    defect_report,
    kernel_vector,
)
from .sampling import random_operator, random_unit_vectors

LAMBDAS = (0.0, 0.3, -0.3, 0.5j, 0.7)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float | None

    @property
    def passed(self) -> bool:
        return self.tol is None or self.residual <= self.tol

    def line(self) -> str:
        if self.tol is None:
            return f"INFO {self.name}: value={self.residual:.3e}"
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual={self.residual:.3e} tol={self.tol:.1e}"


def matched_distance(a, b) -> float:
    """Largest distance under the optimal one-to-one matching of two
    equally sized multisets of complex numbers."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if a.size else 0.0


def run_identity_suite(
    basis: ModelSpaceBasis,
    seed: int = 0,
    lambdas=LAMBDAS,
    n_random: int = 20,
    n_max: int | None = None,
) -> list[Check]:
    rng = np.random.default_rng(seed)
    d, B = basis.d, basis.B
    S = basis.shift
    checks = [
        Check("orthonormal basis", float(np.linalg.norm(B.conj().T @ B - np.eye(d), 2)), 1e-10),
        Check("projection eigenvalue gap", basis.eig_gap, 0.1),
        Check("compressed shift is a contraction", max(0.0, operator_norm(S) - 1.0), 1e-10),
    ]

    xs = random_unit_vectors(n_random, d, rng)
    fs = xs @ B.T
    k0 = kernel_vector(basis, 0.0)
    for lam in lambdas:
        kl = kernel_vector(basis, lam)
        kt = conjugate_kernel_vector(basis, lam)
        powers = lam ** np.arange(basis.N)
        err = max(abs(np.vdot(kl.coords, x) - f @ powers) for x, f in zip(xs, fs))
        checks.append(Check(f"reproducing kernel at {lam}", float(err), 1e-8))
        lhs = S @ kt.coords
        rhs = lam * kt.coords - evaluate(basis.spec, lam) * k0.coords
        checks.append(Check(f"shift on conjugate kernel at {lam}", float(np.linalg.norm(lhs - rhs)), 1e-8))
        if lam != 0:
            lhs = S @ kl.coords
            rhs = (kl.coords - k0.coords) / np.conj(lam)
            checks.append(Check(f"shift on kernel at {lam}", float(np.linalg.norm(lhs - rhs)), 1e-8))
        ck = conjugation_apply(basis, kl.coeffs, tol=np.inf)
        checks.append(Check(f"conjugation maps k to k-tilde at {lam}", float(np.linalg.norm(ck - kt.coeffs)), 1e-8))

    iso = inv = 0.0
    for f in fs:
        cf = conjugation_apply(basis, f, tol=np.inf)
        iso = max(iso, abs(np.linalg.norm(cf) - np.linalg.norm(f)))
        inv = max(inv, float(np.linalg.norm(conjugation_apply(basis, cf, tol=np.inf) - f)))
    checks.append(Check("conjugation is isometric", float(iso), 1e-9))
    checks.append(Check("conjugation is involutive", inv, 1e-9))

    back = shift_matrix(basis.N).conj().T @ B
    leak = (back - basis.projector @ back)[:-1]
    checks.append(Check("backward-shift invariance", float(np.linalg.norm(leak, 2)), 1e-8))

    defect = defect_report(basis)
    checks.append(Check("S S^* = I - k0 (x) k0", defect.r1, 1e-8))
    checks.append(Check("||k0||^2 = 1 - |Theta(0)|^2", abs(defect.k0_norm_sq - defect.expected_k0_norm_sq), 1e-8))
    checks.append(Check("Q_n kernel expansion, n <= d", max(defect.residuals.values(), default=0.0), 1e-8))
    checks.append(
        Check("rank Q_n <= n, n <= d", float(max((r - n for n, r in defect.ranks.items()), default=0)), 0.0)
    )

    zeros = blaschke_zeros(basis.spec)
    if zeros is not None:
        checks.append(Check("compressed shift eigenvalues = Blaschke zeros", matched_distance(np.linalg.eigvals(S), zeros), 1e-6))

    fp = fixed_point_gap(basis)
    checks.append(Check("S^* A S = A only for A = 0 (sigma_min > 1e-8)", 0.0 if fp.unique_zero else 1.0, 0.0))
    checks.append(Check("fixed-point map sigma_min", fp.sigma_min, None))

    n_max = default_n_max(d) if n_max is None else n_max
    excess = -np.inf
    for _ in range(10):
        a = OperatorOnK(basis, random_operator(d, rng))
        rep = strong_probe(a, random_unit_vectors(10, d, rng), n_max)
        excess = max(excess, rep.max_excess)
    checks.append(Check("||A_n f|| <= ||S^n f|| ||A^*||", max(0.0, float(excess)), 1e-10))

    ue = unitary_equiv_check(basis.spec, basis.N)
    checks.append(Check("S_Theta ~ S_Psi^*: singular values", ue.singular_value_distance, 1e-6))
    if ue.eigenvalue_distance is not None:
        checks.append(Check("S_Theta ~ S_Psi^*: eigenvalues", ue.eigenvalue_distance, 1e-6))

    a = OperatorOnK(basis, random_operator(d, rng))
    seq = asymptotic_sequence(a, n_max)
    checks.append(Check(f"||S^*n A S^n|| / ||A|| at n = {n_max}", operator_norm(seq[-1].matrix) / operator_norm(a.matrix), None))
    return checks
