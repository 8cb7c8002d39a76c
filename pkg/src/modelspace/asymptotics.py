"""Asymptotic sequences ``S^{*n} A S^n`` on model spaces and on truncated H^2.

On a model space every bounded operator satisfies ``S^{*n} A S^n -> 0``
strongly, and the convergence is in norm exactly when ``A`` is compact.  At
finite dimension every operator is compact, so the diagnostics here measure
how fast the sequence decays within an iteration budget; they cannot decide
compactness in infinite dimensions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import BadIterationCount, DimensionMismatch, TooLarge
from .hardy import as_matrix, h2_asymptotic_block, operator_norm, toeplitz_matrix
from .inner import InnerFunctionSpec, blaschke_zeros, reflect
from .model_space import ModelSpaceBasis, OperatorOnK, extract_basis

RATE_FLOOR = 1e-15
DEFAULT_DECAY_TOL = 1e-6
MAX_FIXED_POINT_DIM = 64


def default_n_max(d: int) -> int:
    return 4 * d


def asymptotic_sequence(a: OperatorOnK, n_max: int) -> list[OperatorOnK]:
    """``[A_0, ..., A_{n_max}]`` with ``A_{n+1} = S^* A_n S``."""
    if n_max < 0:
        raise BadIterationCount("n_max must be >= 0")
    s = a.basis.shift
    sh = s.conj().T
    out = [a]
    cur = a.matrix
    for _ in range(n_max):
        cur = sh @ cur @ s
        out.append(OperatorOnK(a.basis, cur))
    return out


@dataclass(frozen=True)
class DecayCurve:
    entries: tuple[tuple[int, float], ...]
    kind: str
    fitted_rate: float | None = None

    @property
    def ns(self) -> np.ndarray:
        return np.array([n for n, _ in self.entries])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.entries])

    @property
    def final(self) -> float:
        return self.entries[-1][1]


def fitted_rate(values: Sequence[float]) -> float | None:
    """``exp`` of the least-squares slope of ``log(values)`` over the last
    half of the curve; None if any value is below 1e-15."""
    v = np.asarray(values, dtype=float)
    if v.size < 2 or np.any(v < RATE_FLOOR):
        return None
    tail = np.arange(v.size)[v.size // 2:]
    if tail.size < 2:
        tail = np.arange(v.size)[-2:]
    slope = np.polyfit(tail, np.log(v[tail]), 1)[0]
    return float(math.exp(slope))


def _curve(values, kind) -> DecayCurve:
    values = [float(x) for x in values]
    return DecayCurve(tuple(enumerate(values)), kind, fitted_rate(values))


def decay_curve(a: OperatorOnK, n_max: int | None = None) -> DecayCurve:
    """Operator norms ``||S^{*n} A S^n||`` for ``n = 0..n_max`` (default 4d)."""
    n_max = default_n_max(a.d) if n_max is None else n_max
    return _curve((operator_norm(x.matrix) for x in asymptotic_sequence(a, n_max)), "operator_norm")


class Verdict(str, Enum):
    DECAYED = "decayed"
    STALLED = "stalled"


@dataclass(frozen=True)
class CompactnessScore:
    final_norm: float
    fitted_rate: float | None
    verdict: Verdict
    n_max: int
    operator_norm: float

    def to_json(self) -> dict:
        return {
            "final_norm": self.final_norm,
            "fitted_rate": self.fitted_rate,
            "verdict": self.verdict.value,
            "n_max": self.n_max,
            "operator_norm": self.operator_norm,
        }


def compactness_score(a: OperatorOnK, n_max: int | None = None, tol: float = DEFAULT_DECAY_TOL) -> CompactnessScore:
    """Summarize the decay of ``S^{*n} A S^n`` within ``n_max`` steps.

    The verdict is ``decayed`` when the last norm is at most ``tol * ||A||``.
    In finite dimensions every operator is compact, so this reports decay
    speed within the budget, not compactness itself.
    """
    n_max = default_n_max(a.d) if n_max is None else n_max
    curve = decay_curve(a, n_max)
    norm = curve.entries[0][1]
    verdict = Verdict.DECAYED if curve.final <= tol * norm else Verdict.STALLED
    return CompactnessScore(curve.final, curve.fitted_rate, verdict, n_max, norm)


@dataclass(frozen=True)
class ProbeResult:
    operator_curve: DecayCurve
    shift_curve: DecayCurve
    max_excess: float


@dataclass(frozen=True)
class StrongProbeReport:
    probes: tuple[ProbeResult, ...]
    adjoint_norm: float
    slack: float

    @property
    def max_excess(self) -> float:
        return max((p.max_excess for p in self.probes), default=-math.inf)

    @property
    def bound_holds(self) -> bool:
        return self.max_excess <= self.slack


def strong_probe(a: OperatorOnK, probes, n_max: int | None = None, slack: float = 1e-10) -> StrongProbeReport:
    """Track ``||A_n f||`` and ``||S^n f||`` for each probe ``f`` (given in
    K-coordinates, normalized on entry) and check
    ``||A_n f|| <= ||S^n f|| ||A^*||``."""
    n_max = default_n_max(a.d) if n_max is None else n_max
    seq = asymptotic_sequence(a, n_max)
    s = a.basis.shift
    adj_norm = operator_norm(a.matrix.conj().T)
    results = []
    for f in probes:
        f = np.asarray(f, dtype=complex)
        if f.shape != (a.d,):
            raise DimensionMismatch(f"probe has shape {f.shape}, expected ({a.d},)")
        nf = np.linalg.norm(f)
        if nf > 0:
            f = f / nf
        op_vals, sh_vals = [], []
        sf = f
        for n, an in enumerate(seq):
            if n:
                sf = s @ sf
            op_vals.append(float(np.linalg.norm(an.matrix @ f)))
            sh_vals.append(float(np.linalg.norm(sf)))
        excess = max(o - sv * adj_norm for o, sv in zip(op_vals, sh_vals))
        results.append(ProbeResult(_curve(op_vals, "vector_norm"), _curve(sh_vals, "vector_norm"), excess))
    return StrongProbeReport(tuple(results), adj_norm, slack)


@dataclass(frozen=True)
class FixedPointReport:
    sigma_min: float
    unique_zero: bool

    def to_json(self) -> dict:
        return {"sigma_min": self.sigma_min, "unique_zero": self.unique_zero}


def fixed_point_map(s) -> np.ndarray:
    """Matrix of ``A -> S^* A S - A`` acting on column-major ``vec(A)``."""
    s = as_matrix(s, square=True)
    d = s.shape[0]
    return np.kron(s.T, s.conj().T) - np.eye(d * d)


def fixed_point_gap(basis: ModelSpaceBasis, max_dim: int = MAX_FIXED_POINT_DIM) -> FixedPointReport:
    """Smallest singular value of ``A -> S^* A S - A``; positive means the
    only solution of ``S^* A S = A`` is ``A = 0``."""
    if basis.d > max_dim:
        raise TooLarge(f"d = {basis.d} exceeds {max_dim}; the dense map would be {basis.d ** 2} square")
    sigma = float(np.linalg.svd(fixed_point_map(basis.shift), compute_uv=False)[-1])
    return FixedPointReport(sigma, sigma > 1e-8)


@dataclass(frozen=True)
class FeintuchSplit:
    T1: np.ndarray
    K: np.ndarray
    symbol: dict[int, complex]
    variances: dict[int, float]
    tol: float = 1e-12

    @property
    def max_variance(self) -> float:
        return max(self.variances.values(), default=0.0)

    @property
    def consistent(self) -> bool:
        """Every averaged diagonal was constant to within ``tol``."""
        return self.max_variance <= self.tol


def feintuch_split_h2(t, n_star: int, tol: float = 1e-12) -> FeintuchSplit:
    """Split a truncated H^2 operator into Toeplitz part plus remainder.

    The symbol is estimated from ``S^{*n_star} T S^{n_star}`` by averaging
    each diagonal ``j - k = m`` over ``j, k < N - 2 n_star``; ``T1`` is the
    Toeplitz matrix of that estimate and ``K = T - T1``.
    """
    t = as_matrix(t, square=True)
    size = t.shape[0]
    if n_star < 0 or 2 * n_star >= size:
        raise BadIterationCount(f"need 0 <= 2 * n_star < N = {size}, got n_star = {n_star}")
    block = h2_asymptotic_block(t, n_star)[: size - 2 * n_star, : size - 2 * n_star]
    m_max = size - 2 * n_star - 1
    symbol, variances = {}, {}
    for m in range(-m_max, m_max + 1):
        diag = np.diagonal(block, offset=-m)
        mean = diag.mean()
        variances[m] = float(np.max(np.abs(diag - mean)))
        if mean != 0:
            symbol[m] = complex(mean)
    t1 = toeplitz_matrix(symbol, size)
    return FeintuchSplit(t1, t - t1, symbol, variances, tol)


def hausdorff_distance(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size == 0 or b.size == 0:
        return 0.0 if a.size == b.size else math.inf
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


@dataclass(frozen=True)
class UnitaryEquivReport:
    singular_value_distance: float
    eigenvalue_distance: float | None
    d_theta: int
    d_psi: int
    eig_gap: float


def unitary_equiv_check(spec: InnerFunctionSpec, N: int | str | None = None) -> UnitaryEquivReport:
    """Compare ``S_Theta`` with ``S_Psi^*`` for ``Psi(z) = conj(Theta(conj(z)))``.

    Reports the largest gap between sorted singular values and, for finite
    Blaschke products, the Hausdorff distance between eigenvalue sets.  The
    bases are built without the eigenvalue-gap refusal so truncated singular
    models can still be compared; ``eig_gap`` records how approximate they are.
    """
    b_theta = extract_basis(spec, N, check_gap=False)
    b_psi = extract_basis(reflect(spec), b_theta.N, check_gap=False)
    s = b_theta.shift
    s_psi_adj = b_psi.shift.conj().T
    sv1 = np.linalg.svd(s, compute_uv=False)
    sv2 = np.linalg.svd(s_psi_adj, compute_uv=False)
    if sv1.size == sv2.size:
        sv_dist = float(np.max(np.abs(sv1 - sv2)))
    else:
        sv_dist = math.inf
    eig_dist = None
    if blaschke_zeros(spec) is not None:
        eig_dist = hausdorff_distance(np.linalg.eigvals(s), np.linalg.eigvals(s_psi_adj))
    return UnitaryEquivReport(sv_dist, eig_dist, b_theta.d, b_psi.d, max(b_theta.eig_gap, b_psi.eig_gap))
