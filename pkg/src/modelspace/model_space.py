"""Model spaces ``K_Theta = H^2 (-) Theta H^2`` inside truncated H^2.

The projection onto ``K_Theta`` is realized at order ``N`` as
``I - T T^*`` with ``T`` the lower-triangular Toeplitz matrix of the Taylor
coefficients of Theta.  Because multiplication by Theta never lowers
degree, this matrix is exactly the compression of the true projection to
polynomials of degree ``< N``; its eigenvalues sit near 0 and 1 whenever the
coefficient tail of Theta beyond ``N`` is negligible.  An orthonormal basis
of ``K_Theta`` is read off from the eigenvectors with eigenvalue near 1.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatch,
    EmptyModelSpace,
    LambdaTooLarge,
    NotInModelSpace,
    TruncationInsufficient,
    TruncationWarning,
)
from .hardy import analytic_toeplitz, as_coeffvec, as_matrix, hankel_matrix, shift_matrix
from .inner import InnerFunctionSpec, evaluate, taylor_coefficients

DEFAULT_N = 64
DEFAULT_TAIL_TOL = 1e-24
MAX_AUTO_N = 512
GAP_LIMIT = 0.1
MAX_LAMBDA = 0.9


class TruncationChoice(NamedTuple):
    n: int
    certified: bool
    message: str | None


def auto_truncation(
    spec: InnerFunctionSpec,
    tail_tol: float = DEFAULT_TAIL_TOL,
    n_min: int = DEFAULT_N,
    n_cap: int = MAX_AUTO_N,
) -> TruncationChoice:
    """Smallest order ``N >= n_min`` whose coefficient tail energy
    ``sum_{n >= N} |theta_n|^2`` is estimated below ``tail_tol``.

    The part of the tail beyond the computed range is extrapolated from a
    geometric fit to the upper envelope of ``|theta_n|^2`` over the last half
    of ``n_cap`` coefficients.  If no such ``N <= n_cap`` exists the cap is
    returned with ``certified=False``.
    """
    theta = taylor_coefficients(spec, n_cap)
    energy = np.abs(theta) ** 2
    window = np.arange(n_cap // 2, n_cap)
    envelope = np.maximum.accumulate(energy[window][::-1])[::-1]
    usable = envelope > 1e-290
    beyond = 0.0
    if usable.sum() >= 4:
        slope, intercept = np.polyfit(window[usable], np.log(envelope[usable]), 1)
        if slope >= 0.0:
            beyond = math.inf
        else:
            beyond = math.exp(intercept + slope * n_cap) / -math.expm1(slope)
    tails = np.cumsum(energy[::-1])[::-1] + beyond
    below = np.nonzero(tails < tail_tol)[0]
    if below.size:
        return TruncationChoice(max(n_min, int(below[0])), True, None)
    msg = (
        f"coefficient tail of Theta could not be certified below {tail_tol:g} "
        f"with N <= {n_cap}; using N = {max(n_min, n_cap)}. For singular inner "
        "factors the truncated model is approximate and the detected dimension "
        "depends on N."
    )
    return TruncationChoice(max(n_min, n_cap), False, msg)


def projection_matrix(spec: InnerFunctionSpec, n: int) -> np.ndarray:
    """``I - T_Theta T_Theta^*`` at truncation order ``n``."""
    if n < 2:
        raise ValueError("truncation order must be >= 2")
    t = analytic_toeplitz(taylor_coefficients(spec, n), n)
    p = np.eye(n, dtype=complex) - t @ t.conj().T
    return 0.5 * (p + p.conj().T)


@dataclass(frozen=True, eq=False)
class ModelSpaceBasis:
    """Orthonormal frame of ``K_Theta`` in truncated Taylor coordinates.

    ``B`` is ``N x d`` with orthonormal columns.  ``theta`` holds ``2N``
    Taylor coefficients of Theta (the conjugation needs indices up to
    ``2N - 1``).
    """

    spec: InnerFunctionSpec
    N: int
    B: np.ndarray
    eig_gap: float
    isometry_defect: float
    theta: np.ndarray
    eigenvalues: np.ndarray
    warnings: tuple[str, ...] = field(default=())

    @property
    def d(self) -> int:
        return self.B.shape[1]

    @cached_property
    def projector(self) -> np.ndarray:
        return self.B @ self.B.conj().T

    @cached_property
    def shift(self) -> np.ndarray:
        """Compressed shift as a ``d x d`` matrix."""
        return compress(shift_matrix(self.N), self).matrix

    def coords(self, f) -> np.ndarray:
        """K-coordinates of a Taylor coefficient vector."""
        return self.B.conj().T @ as_coeffvec(f)

    def coeffs(self, x) -> np.ndarray:
        """Taylor coefficients of the element with K-coordinates ``x``."""
        return self.B @ np.asarray(x, dtype=complex)


def _isometry_defect(theta: np.ndarray, n: int) -> float:
    nz = np.nonzero(np.abs(theta[:n]) > 1e-16 * np.abs(theta[:n]).max())[0]
    cut = min(n - 1, int(nz[-1]) + 1)
    t = analytic_toeplitz(theta[:n], n)
    block = (t.conj().T @ t)[: n - cut, : n - cut]
    return float(np.linalg.norm(block - np.eye(n - cut), 2))


def extract_basis(
    spec: InnerFunctionSpec,
    N: int | str | None = None,
    threshold: float = 0.5,
    *,
    tail_tol: float = DEFAULT_TAIL_TOL,
    check_gap: bool = True,
) -> ModelSpaceBasis:
    """Build an orthonormal basis of ``K_Theta``.

    With ``N`` omitted (or ``"auto"``) the order comes from
    :func:`auto_truncation`, which warns with :class:`TruncationWarning` when
    the tail cannot be certified.  ``check_gap=False`` skips the refusal on
    eigenvalues far from {0, 1}; only use it for diagnostics on truncated
    models that are known to be approximate.
    """
    notes = []
    if N is None or N == "auto":
        choice = auto_truncation(spec, tail_tol)
        N = choice.n
        if choice.message:
            notes.append(choice.message)
            warnings.warn(choice.message, TruncationWarning, stacklevel=2)
    N = int(N)
    if N < 2:
        raise ValueError("truncation order must be >= 2")
    theta = taylor_coefficients(spec, 2 * N)
    t = analytic_toeplitz(theta[:N], N)
    p = np.eye(N, dtype=complex) - t @ t.conj().T
    p = 0.5 * (p + p.conj().T)
    w, v = np.linalg.eigh(p)
    gap = float(np.max(np.minimum(np.abs(w), np.abs(w - 1.0))))
    if check_gap and gap > GAP_LIMIT:
        raise TruncationInsufficient(
            f"projection eigenvalue at distance {gap:.3g} from {{0, 1}} "
            f"(limit {GAP_LIMIT}); N = {N} is too small for this inner function",
            eig_gap=gap,
        )
    keep = w > threshold
    if not keep.any():
        raise EmptyModelSpace("no projection eigenvalue above the threshold")
    # eigh sorts ascending; present the basis with the largest eigenvalues first
    B = v[:, keep][:, ::-1].copy()
    B.setflags(write=False)
    theta.setflags(write=False)
    w.setflags(write=False)
    return ModelSpaceBasis(
        spec=spec,
        N=N,
        B=B,
        eig_gap=gap,
        isometry_defect=_isometry_defect(theta, N),
        theta=theta,
        eigenvalues=w,
        warnings=tuple(notes),
    )


@dataclass(frozen=True, eq=False)
class OperatorOnK:
    """A ``d x d`` matrix acting in the coordinates of ``basis``."""

    basis: ModelSpaceBasis
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, square=True)
        if m.shape[0] != self.basis.d:
            raise DimensionMismatch(
                f"operator is {m.shape[0]}x{m.shape[1]} but the basis has d = {self.basis.d}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.basis.d

    def adjoint(self) -> OperatorOnK:
        return OperatorOnK(self.basis, self.matrix.conj().T)


def compress(m, basis: ModelSpaceBasis) -> OperatorOnK:
    """``B^* M B``: the compression of an N x N matrix to ``K_Theta``."""
    m = as_matrix(m, square=True)
    if m.shape[0] != basis.N:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[1]}, basis has N = {basis.N}")
    return OperatorOnK(basis, basis.B.conj().T @ m @ basis.B)


def compressed_shift(basis: ModelSpaceBasis) -> OperatorOnK:
    return OperatorOnK(basis, basis.shift)


class KernelVector(NamedTuple):
    coeffs: np.ndarray
    coords: np.ndarray
    tail_bound: float


def _check_lambda(lam) -> complex:
    lam = complex(lam)
    if abs(lam) > MAX_LAMBDA:
        raise LambdaTooLarge(f"|lambda| = {abs(lam):.3g} exceeds {MAX_LAMBDA}")
    return lam


def kernel_vector(basis: ModelSpaceBasis, lam) -> KernelVector:
    """Reproducing kernel ``(1 - conj(Theta(lam)) Theta(z)) / (1 - conj(lam) z)``."""
    lam = _check_lambda(lam)
    n = basis.N
    u = np.conj(lam) ** np.arange(n)
    theta_u = np.convolve(basis.theta[:n], u)[:n]
    c = u - np.conj(evaluate(basis.spec, lam)) * theta_u
    return KernelVector(c, basis.coords(c), abs(lam) ** n / (1.0 - abs(lam)))


def conjugate_kernel_vector(basis: ModelSpaceBasis, lam) -> KernelVector:
    """Conjugate kernel ``(Theta(z) - Theta(lam)) / (z - lam)``."""
    lam = _check_lambda(lam)
    b = _kernels.synthetic_division(basis.theta[: basis.N], lam)
    return KernelVector(b, basis.coords(b), abs(lam) ** basis.N / (1.0 - abs(lam)))


def distance_from_model_space(basis: ModelSpaceBasis, f) -> float:
    f = as_coeffvec(f)
    return float(np.linalg.norm(f - basis.projector @ f))


def conjugation_apply(basis: ModelSpaceBasis, f, tol: float = 1e-8) -> np.ndarray:
    """Apply the antilinear conjugation ``f -> conj(z f) Theta`` (boundary values)
    to a coefficient vector lying in ``K_Theta``."""
    f = as_coeffvec(f)
    if f.size != basis.N:
        raise DimensionMismatch(f"vector has length {f.size}, basis has N = {basis.N}")
    dist = distance_from_model_space(basis, f)
    if dist > tol * max(1.0, float(np.linalg.norm(f))):
        raise NotInModelSpace(f"vector is at distance {dist:.3g} from the model space")
    return hankel_matrix(basis.theta, basis.N) @ np.conj(f)


def conjugation_matrix(basis: ModelSpaceBasis) -> np.ndarray:
    """``C_K`` with ``coords(C f) = C_K @ conj(coords(f))``."""
    gamma = hankel_matrix(basis.theta, basis.N)
    return basis.B.conj().T @ gamma @ np.conj(basis.B)


@dataclass(frozen=True)
class DefectReport:
    """Residuals of ``S S^* = I - k_0 (x) k_0`` and its iterates.

    ``residuals[n]`` is ``||S^n S^{*n} - (I - sum_{j<n} S^j k_0 (x) S^j k_0)||``
    and ``ranks[n]`` the numerical rank of ``Q_n = I - S^n S^{*n}``.
    """

    r1: float
    residuals: dict[int, float]
    ranks: dict[int, int]
    k0_norm_sq: float
    expected_k0_norm_sq: float


def defect_report(basis: ModelSpaceBasis, n_max: int | None = None, rank_tol: float = 1e-8) -> DefectReport:
    """Check the defect identities with the unnormalized kernel at 0."""
    d = basis.d
    n_max = d if n_max is None else int(n_max)
    s = basis.shift
    k0 = kernel_vector(basis, 0.0).coords
    eye = np.eye(d)
    residuals, ranks = {}, {}
    sn = eye.astype(complex)
    acc = np.zeros((d, d), dtype=complex)
    sj_k = k0.copy()
    for n in range(1, n_max + 1):
        acc += np.outer(sj_k, sj_k.conj())
        sj_k = s @ sj_k
        sn = s @ sn
        q = eye - sn @ sn.conj().T
        residuals[n] = float(np.linalg.norm(q - acc, 2))
        sv = np.linalg.svd(q, compute_uv=False)
        ranks[n] = int(np.sum(sv > rank_tol))
    theta0 = evaluate(basis.spec, 0.0)
    return DefectReport(
        r1=residuals.get(1, float(np.linalg.norm(eye - s @ s.conj().T - np.outer(k0, k0.conj()), 2))),
        residuals=residuals,
        ranks=ranks,
        k0_norm_sq=float(np.vdot(k0, k0).real),
        expected_k0_norm_sq=1.0 - abs(theta0) ** 2,
    )
