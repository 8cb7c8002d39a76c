"""Seeded random operators and probe vectors.

Random operators have independent complex Gaussian entries with
``E|a_ij|^2 = 1/d`` (real and imaginary parts each of variance ``1/(2d)``),
drawn row-major from ``numpy.random.default_rng(seed)``: first the ``d*d``
real parts, then the ``d*d`` imaginary parts.
"""
import numpy as np


def random_operator(d: int, rng: np.random.Generator) -> np.ndarray:
    re = rng.standard_normal((d, d))
    im = rng.standard_normal((d, d))
    return (re + 1j * im) / np.sqrt(2.0 * d)


def random_low_rank(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Sum of ``rank`` random outer products ``u v^*``."""
    u = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    v = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    return u @ v.conj().T / (2.0 * d)


def random_unit_vectors(count: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """``count x d`` array of unit vectors."""
    v = rng.standard_normal((count, d)) + 1j * rng.standard_normal((count, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
