import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modelspace.errors import BadIterationCount, IndexOutOfRange, InsufficientCoefficients
from modelspace.hardy import (
    h2_asymptotic_block,
    hankel_matrix,
    operator_norm,
    shift_matrix,
    toeplitz_matrix,
)
from modelspace.inner import make_blaschke, taylor_coefficients

coef = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def symbols(n):
    return st.dictionaries(st.integers(-(n - 1), n - 1), coef, max_size=6)


def test_shift_matrix_entries():
    np.testing.assert_array_equal(shift_matrix(3), [[0, 0, 0], [1, 0, 0], [0, 1, 0]])


def test_backward_shift_drops_constant_term():
    a = np.array([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(shift_matrix(3).conj().T @ a, [2.0, 3.0, 0.0])


def test_shift_nilpotent_at_truncation():
    s = shift_matrix(2)
    np.testing.assert_array_equal(s @ s, np.zeros((2, 2)))


@pytest.mark.parametrize("n", [2, 3, 10, 40])
def test_shift_has_unit_norm(n):
    assert operator_norm(shift_matrix(n)) == pytest.approx(1.0, abs=1e-14)
    assert operator_norm(shift_matrix(n).conj().T) == pytest.approx(1.0, abs=1e-14)


def test_toeplitz_examples():
    np.testing.assert_array_equal(toeplitz_matrix({1: 1}, 4), shift_matrix(4))
    np.testing.assert_array_equal(toeplitz_matrix({0: 2, 1: 1}, 3), [[2, 0, 0], [1, 2, 0], [0, 1, 2]])
    t = toeplitz_matrix(dict(enumerate(taylor_coefficients(make_blaschke([0, 0, 0]), 5))), 5)
    j, k = np.indices((5, 5))
    np.testing.assert_array_equal(t, (j - k == 3).astype(float))


def test_toeplitz_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        toeplitz_matrix({4: 1.0}, 4)


@given(sym=symbols(7))
def test_toeplitz_entry_rule(sym):
    t = toeplitz_matrix(sym, 7)
    for j in range(7):
        for k in range(7):
            assert t[j, k] == sym.get(j - k, 0)


def test_hankel_examples():
    c = taylor_coefficients(make_blaschke([0, 0, 0]), 6)
    np.testing.assert_array_equal(hankel_matrix(c, 3), [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    np.testing.assert_array_equal(hankel_matrix(np.zeros(4), 2), np.zeros((2, 2)))
    h = hankel_matrix(taylor_coefficients(make_blaschke([0.5]), 4), 2)
    np.testing.assert_allclose(h, [[-0.75, -0.375], [-0.375, -0.1875]], atol=1e-15)


def test_hankel_needs_2n_coefficients():
    with pytest.raises(InsufficientCoefficients):
        hankel_matrix(np.ones(5), 3)


@given(c=st.lists(coef, min_size=12, max_size=12))
def test_hankel_symmetric(c):
    h = hankel_matrix(c, 6)
    np.testing.assert_array_equal(h, h.T)


def test_block_of_toeplitz():
    t = toeplitz_matrix({0: 2, 1: 1}, 5)
    b = h2_asymptotic_block(t, 2)
    np.testing.assert_array_equal(b[:3, :3], toeplitz_matrix({0: 2, 1: 1}, 3))
    assert not b[3:, :].any() and not b[:, 3:].any()


def test_block_kills_corner():
    e = np.zeros((4, 4))
    e[0, 0] = 1
    np.testing.assert_array_equal(h2_asymptotic_block(e, 1), np.zeros((4, 4)))


def test_block_identity_case():
    t = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(h2_asymptotic_block(t, 0), t)


def test_block_matches_matrix_product():
    rng = np.random.default_rng(0)
    t = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    s = shift_matrix(6)
    for n in range(6):
        sn = np.linalg.matrix_power(s, n)
        np.testing.assert_array_equal(h2_asymptotic_block(t, n), sn.conj().T @ t @ sn)


@pytest.mark.parametrize("n", [-1, 5])
def test_block_bad_count(n):
    with pytest.raises(BadIterationCount):
        h2_asymptotic_block(np.eye(5), n)


@given(sym=symbols(9), n=st.integers(0, 8))
@settings(max_examples=60)
def test_brown_halmos_block_exact(sym, n):
    t = toeplitz_matrix(sym, 9)
    block = h2_asymptotic_block(t, n)[: 9 - n, : 9 - n]
    expected = toeplitz_matrix({m: v for m, v in sym.items() if abs(m) < 9 - n}, 9 - n)
    np.testing.assert_array_equal(block, expected)


@given(n=st.integers(0, 6), seed=st.integers(0, 2**32 - 1))
def test_block_semigroup(n, seed):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    np.testing.assert_array_equal(h2_asymptotic_block(t, n + 1), h2_asymptotic_block(h2_asymptotic_block(t, n), 1))
