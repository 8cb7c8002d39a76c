import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modelspace import _kernels

BACKENDS = [_kernels.fallback] + ([_kernels.compiled] if _kernels.compiled is not None else [])
IDS = ["python"] + (["cython"] if _kernels.compiled is not None else [])

disk_points = st.builds(
    lambda r, t: r * np.exp(1j * t),
    st.floats(0.0, 0.95),
    st.floats(0.0, 2 * np.pi),
)


@pytest.mark.skipif(bool(os.environ.get("MODELSPACE_PURE_PYTHON")), reason="fallback forced")
def test_compiled_backend_is_built():
    assert _kernels.compiled is not None
    assert _kernels.BACKEND == "cython"


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_blaschke_expand_half(k):
    np.testing.assert_allclose(k.blaschke_expand([0.5], 4), [0.5, -0.75, -0.375, -0.1875], atol=1e-15)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_blaschke_expand_origin_zero_is_shift(k):
    np.testing.assert_array_equal(k.blaschke_expand([0, 0, 0], 5), [0, 0, 0, 1, 0])


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
@given(zeros=st.lists(disk_points, min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_blaschke_expand_matches_rational_division(k, zeros):
    # oracle: numerator polynomial / denominator polynomial by long division
    n = 24
    num = np.array([1.0 + 0j])
    den = np.array([1.0 + 0j])
    for a in zeros:
        if a == 0:
            num = np.convolve(num, [0, 1])
        else:
            num = np.convolve(num, (complex(a).conjugate() / abs(complex(a))) * np.array([a, -1]))
            den = np.convolve(den, [1, -np.conj(a)])
    out = np.zeros(n, dtype=complex)
    rem = np.zeros(n + den.size, dtype=complex)
    rem[: num.size] = num
    for i in range(n):
        out[i] = rem[i] / den[0]
        rem[i : i + den.size] -= out[i] * den
    np.testing.assert_allclose(k.blaschke_expand(zeros, n), out, atol=1e-12)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
@given(coeffs=st.lists(st.complex_numbers(max_magnitude=2.0), min_size=2, max_size=30), lam=disk_points)
@settings(max_examples=40, deadline=None)
def test_synthetic_division_matches_polydiv(k, coeffs, lam):
    theta = np.array(coeffs, dtype=complex)
    # numpy.polydiv wants highest degree first
    q, r = np.polydiv(theta[::-1], np.array([1.0, -lam]))
    expected = np.zeros(theta.size, dtype=complex)
    expected[: q.size] = q[::-1]
    np.testing.assert_allclose(k.synthetic_division(theta, lam), expected, atol=1e-9)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_exp_series_of_linear_is_exponential(k):
    from math import factorial

    g = np.zeros(12, dtype=complex)
    g[1] = 1.0
    np.testing.assert_allclose(k.exp_series(g), [1 / factorial(n) for n in range(12)], rtol=1e-14)


@pytest.mark.parametrize("k", BACKENDS, ids=IDS)
def test_exp_series_against_fft_sampling(k):
    # oracle: sample exp(g(z)) on a circle and take the discrete Fourier transform
    rng = np.random.default_rng(1)
    g = (rng.standard_normal(40) + 1j * rng.standard_normal(40)) * 0.5 ** np.arange(40)
    m, r = 512, 0.7
    z = r * np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.exp(np.polyval(g[::-1], z))
    oracle = np.fft.fft(vals)[:40] / m / r ** np.arange(40)
    np.testing.assert_allclose(k.exp_series(g), oracle, atol=1e-8)


@given(zeros=st.lists(disk_points, min_size=1, max_size=5), lam=disk_points)
@settings(max_examples=30, deadline=None)
def test_backends_agree(zeros, lam):
    if _kernels.compiled is None:
        pytest.skip("compiled backend not built")
    c, f = _kernels.compiled, _kernels.fallback
    a = f.blaschke_expand(zeros, 50)
    np.testing.assert_allclose(c.blaschke_expand(zeros, 50), a, atol=1e-14)
    np.testing.assert_allclose(c.synthetic_division(a, lam), f.synthetic_division(a, lam), atol=1e-13)
    g = -0.3 * a
    np.testing.assert_allclose(c.exp_series(g), f.exp_series(g), atol=1e-13)


def test_pure_python_switch(monkeypatch):
    import importlib

    monkeypatch.setenv("MODELSPACE_PURE_PYTHON", "1")
    mod = importlib.reload(_kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.exp_series is mod.fallback.exp_series
    finally:
        monkeypatch.delenv("MODELSPACE_PURE_PYTHON")
        importlib.reload(_kernels)
