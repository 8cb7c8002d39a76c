"""Truncated Hardy-space matrices in the monomial basis.

Convention: column ``k`` holds the image of ``z**k`` and entry ``(j, k)`` is
the coefficient of ``z**j``.  At a finite order ``N`` the shift is
nilpotent, so asymptotic statements about ``S^{*n} T S^n`` are only exact on
the surviving top-left ``(N - n) x (N - n)`` block.
"""
from __future__ import annotations

from typing import Mapping

import numpy as np

from .errors import BadIterationCount, DimensionMismatch, IndexOutOfRange, InsufficientCoefficients


def as_coeffvec(f) -> np.ndarray:
    """Validate and return a 1-D complex coefficient vector."""
    v = np.asarray(f, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch(f"coefficient vector must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("coefficient vector has non-finite entries")
    return v


def as_matrix(m, square: bool = False) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or 0 in a.shape:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def operator_norm(m) -> float:
    """Largest singular value (0 for an empty matrix)."""
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def shift_matrix(n: int) -> np.ndarray:
    """Forward shift ``f -> z f`` truncated to polynomials of degree < n."""
    if n < 1:
        raise ValueError("order must be >= 1")
    return np.eye(n, k=-1, dtype=complex)


def toeplitz_matrix(symbol: Mapping[int, complex], n: int) -> np.ndarray:
    """N x N Toeplitz matrix with entry ``(j, k) = symbol[j - k]``."""
    if n < 1:
        raise ValueError("order must be >= 1")
    out = np.zeros((n, n), dtype=complex)
    for m, t in symbol.items():
        m = int(m)
        if abs(m) >= n:
            raise IndexOutOfRange(f"symbol index {m} needs |m| < {n}")
        if t != 0:
            out += complex(t) * np.eye(n, k=-m, dtype=complex)
    return out


def analytic_toeplitz(coeffs, n: int) -> np.ndarray:
    """Lower-triangular Toeplitz matrix of multiplication by an analytic symbol."""
    c = as_coeffvec(coeffs)
    return toeplitz_matrix({m: c[m] for m in range(min(n, c.size))}, n)


def hankel_matrix(coeffs, n: int) -> np.ndarray:
    """N x N Hankel matrix with entry ``(j, k) = coeffs[j + k + 1]``."""
    c = as_coeffvec(coeffs)
    if c.size < 2 * n:
        raise InsufficientCoefficients(f"need {2 * n} coefficients, got {c.size}")
    idx = np.arange(n)
    return c[idx[:, None] + idx[None, :] + 1].copy()


def h2_asymptotic_block(t, n: int) -> np.ndarray:
    """``S^{*n} T S^n`` at truncation order ``N = T.shape[0]``.

    Computed by index shifting, which is exact: entry ``(j, k)`` equals
    ``T[j + n, k + n]`` and rows/columns ``>= N - n`` vanish.
    """
    t = as_matrix(t, square=True)
    size = t.shape[0]
    if not 0 <= n < size:
        raise BadIterationCount(f"iteration count must satisfy 0 <= n < {size}, got {n}")
    out = np.zeros_like(t)
    out[: size - n, : size - n] = t[n:, n:]
    return out
