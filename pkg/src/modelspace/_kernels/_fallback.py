"""Pure-Python implementations of the coefficient recurrences.

Every function here has an identically named counterpart in the compiled
``_ext`` module; the two must agree to rounding.
"""
import numpy as np


def exp_series(g):
    """Truncated power series of ``exp(g)``.

    Uses ``(n+1) f[n+1] = sum_k (k+1) g[k+1] f[n-k]``, so only
    ``len(g)`` coefficients of ``g`` are needed for the same number of
    output coefficients.
    """
    g = np.ascontiguousarray(g, dtype=complex)
    n_out = g.shape[0]
    f = np.zeros(n_out, dtype=complex)
    if n_out == 0:
        return f
    f[0] = np.exp(g[0])
    dg = g[1:] * np.arange(1, n_out)
    for n in range(n_out - 1):
        f[n + 1] = np.dot(dg[: n + 1], f[n::-1]) / (n + 1)
    return f


def blaschke_expand(zeros, n_out):
    """First ``n_out`` Taylor coefficients of the normalized finite
    Blaschke product with the given zeros (unimodular factor 1)."""
    c = [0j] * n_out
    if n_out:
        c[0] = 1 + 0j
    for a in zeros:
        a = complex(a)
        if a == 0:
            c = [0j] + c[:-1]
            continue
        r = abs(a)
        unit = a.conjugate() / r
        # renormalize: |a| is inexact for subnormal zeros
        unit = unit / abs(unit)
        ac = a.conjugate()
        # multiply by unit * (a - z)
        prev = 0j
        for n in range(n_out):
            cur = c[n]
            c[n] = unit * (a * cur - prev)
            prev = cur
        # divide by (1 - conj(a) z)
        acc = 0j
        for n in range(n_out):
            acc = c[n] + ac * acc
            c[n] = acc
    return np.array(c, dtype=complex)


def synthetic_division(theta, lam):
    """Coefficients of ``(Theta(z) - Theta(lam)) / (z - lam)`` from the
    truncated coefficients of ``Theta``."""
    theta = [complex(t) for t in theta]
    lam = complex(lam)
    n = len(theta)
    b = [0j] * n
    acc = 0j
    for k in range(n - 2, -1, -1):
        acc = theta[k + 1] + lam * acc
        b[k] = acc
    return np.array(b, dtype=complex)

