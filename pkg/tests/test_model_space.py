import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _fixtures import BLASCHKE, SINGULAR
from modelspace.errors import (
    DimensionMismatch,
    EmptyModelSpace,
    LambdaTooLarge,
    NotInModelSpace,
    TruncationInsufficient,
    TruncationWarning,
)
from modelspace.hardy import operator_norm, shift_matrix
from modelspace.identities import matched_distance
from modelspace.inner import evaluate, make_blaschke
from modelspace.model_space import (
    auto_truncation,
    compress,
    compressed_shift,
    conjugate_kernel_vector,
    conjugation_apply,
    conjugation_matrix,
    defect_report,
    extract_basis,
    kernel_vector,
    projection_matrix,
)

LAMBDAS = [0.0, 0.3, -0.3, 0.5j, 0.7]
NAMES = list(BLASCHKE)


@pytest.fixture(scope="module")
def cube():
    return extract_basis(BLASCHKE["z3"], 5)


class TestProjection:
    def test_cube(self):
        np.testing.assert_array_equal(projection_matrix(BLASCHKE["z3"], 5), np.diag([1, 1, 1, 0, 0]))

    def test_z(self):
        np.testing.assert_array_equal(projection_matrix(BLASCHKE["z"], 3), np.diag([1, 0, 0]))

    def test_half_blaschke_spectrum(self):
        p = projection_matrix(BLASCHKE["b05"], 64)
        np.testing.assert_array_equal(p, p.conj().T)
        w = np.linalg.eigvalsh(p)
        np.testing.assert_allclose(w, [0.0] * 63 + [1.0], atol=1e-8)


class TestExtractBasis:
    def test_cube(self, cube):
        assert cube.d == 3
        # range equals span of 1, z, z^2
        np.testing.assert_allclose(cube.projector, np.diag([1, 1, 1, 0, 0]), atol=1e-15)

    @pytest.mark.parametrize("zeros, d", [([0.5], 1), ([0.5, 0.3j], 2), ([0.1, 0.2, -0.7j, 0.4 + 0.4j], 4)])
    def test_dimension_is_degree(self, zeros, d):
        b = extract_basis(make_blaschke(zeros), 64)
        assert b.d == d
        assert b.eig_gap <= 1e-8
        assert b.isometry_defect <= 1e-12

    def test_gap_refusal(self):
        with pytest.raises(TruncationInsufficient) as info:
            extract_basis(SINGULAR, 64)
        assert info.value.eig_gap > 0.1

    def test_empty(self):
        with pytest.raises(EmptyModelSpace):
            extract_basis(BLASCHKE["b05"], 16, threshold=1.5)

    def test_auto_truncation_warns_for_singular(self):
        with pytest.warns(TruncationWarning):
            with pytest.raises(TruncationInsufficient):
                extract_basis(SINGULAR)

    def test_singular_dimension_depends_on_truncation(self):
        dims = [extract_basis(SINGULAR, n, check_gap=False).d for n in (32, 64, 128)]
        assert dims == sorted(dims) and dims[0] < dims[-1]

    def test_basis_is_read_only(self, cube):
        with pytest.raises(ValueError):
            cube.B[0, 0] = 2.0


class TestAutoTruncation:
    def test_polynomial_theta_uses_minimum(self):
        assert auto_truncation(BLASCHKE["z3"]) == (64, True, None)

    def test_slow_blaschke_needs_more(self):
        choice = auto_truncation(make_blaschke([0.85]))
        # |theta_n|^2 ~ 0.7225^n, tail below 1e-24 needs n around 170
        assert choice.certified and 150 < choice.n < 200

    def test_singular_not_certified(self):
        choice = auto_truncation(SINGULAR)
        assert not choice.certified and choice.message


def test_auto_tail_estimate_is_conservative():
    # oracle: the exact tail energy of a single Blaschke factor is
    # sum_{n>=N} (1-r^2)^2 r^(2n-2) = (1-r^2) r^(2N-2)
    r = 0.85
    n = auto_truncation(make_blaschke([r])).n
    assert (1 - r**2) * r ** (2 * n - 2) < 1e-24
    assert (1 - r**2) * r ** (2 * (n - 3) - 2) > 1e-24 / 10


class TestCompress:
    def test_identity(self, bases):
        b = bases["deg8"]
        np.testing.assert_allclose(compress(np.eye(b.N), b).matrix, np.eye(8), atol=1e-14)

    def test_cube_shift_is_jordan_block(self, cube):
        # eigenvalue 1 is triple, so compare in coefficient space
        jordan = np.pad(np.eye(3, k=-1), ((0, 2), (0, 2)))
        for s in (compress(shift_matrix(5), cube).matrix, compressed_shift(cube).matrix):
            np.testing.assert_allclose(cube.B @ s @ cube.B.conj().T, jordan, atol=1e-15)

    def test_zero(self, cube):
        assert not compress(np.zeros((5, 5)), cube).matrix.any()

    def test_dimension_mismatch(self, cube):
        with pytest.raises(DimensionMismatch):
            compress(np.eye(4), cube)

    def test_half_blaschke_shift(self, bases):
        np.testing.assert_allclose(compressed_shift(bases["b05"]).matrix, [[0.5]], atol=1e-8)

    def test_symmetric_zeros(self, bases):
        ev = np.linalg.eigvals(compressed_shift(bases["b05_m05"]).matrix)
        np.testing.assert_allclose(np.sort(ev.real), [-0.5, 0.5], atol=1e-8)


class TestKernels:
    def test_cube_at_origin(self, cube):
        np.testing.assert_allclose(kernel_vector(cube, 0).coeffs, [1, 0, 0, 0, 0], atol=1e-15)

    def test_cube_at_half(self, cube):
        np.testing.assert_allclose(kernel_vector(cube, 0.5).coeffs, [1, 0.5, 0.25, 0, 0], atol=1e-15)

    def test_half_blaschke_at_origin(self, bases):
        k = kernel_vector(bases["b05"], 0).coeffs
        np.testing.assert_allclose(k[:4], [0.75, 0.375, 0.1875, 0.09375], atol=1e-15)

    def test_lambda_too_large(self, cube):
        with pytest.raises(LambdaTooLarge):
            kernel_vector(cube, 0.95)
        with pytest.raises(LambdaTooLarge):
            conjugate_kernel_vector(cube, 0.91j)

    def test_conjugate_kernel_examples(self, cube):
        np.testing.assert_allclose(conjugate_kernel_vector(cube, 0.5).coeffs, [0.25, 0.5, 1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(conjugate_kernel_vector(cube, 0).coeffs, [0, 0, 1, 0, 0], atol=1e-15)

    def test_conjugate_kernel_at_zero_is_eigenvector(self, bases):
        b = bases["b05"]
        x = conjugate_kernel_vector(b, 0.5).coords
        np.testing.assert_allclose(b.shift @ x, 0.5 * x, atol=1e-12)

    @pytest.mark.parametrize("name", NAMES)
    def test_reproducing_property(self, bases, name):
        b = bases[name]
        rng = np.random.default_rng(5)
        xs = rng.standard_normal((20, b.d)) + 1j * rng.standard_normal((20, b.d))
        for lam in LAMBDAS:
            k = kernel_vector(b, lam)
            for x in xs:
                f = b.coeffs(x)
                value = np.polyval(f[::-1], lam)
                assert abs(np.vdot(k.coords, x) - value) <= 10 * 0.9**b.N / 0.1 + 1e-9

    @pytest.mark.parametrize("name", NAMES)
    def test_shift_on_kernels(self, bases, name):
        b = bases[name]
        s = b.shift
        k0 = kernel_vector(b, 0).coords
        for lam in LAMBDAS:
            kt = conjugate_kernel_vector(b, lam).coords
            assert np.linalg.norm(s @ kt - (lam * kt - evaluate(b.spec, lam) * k0)) <= 1e-8
            if lam != 0:
                k = kernel_vector(b, lam).coords
                assert np.linalg.norm(s @ k - (k - k0) / np.conj(lam)) <= 1e-8


class TestConjugation:
    def test_constant_maps_to_z2(self, cube):
        np.testing.assert_array_equal(conjugation_apply(cube, [1, 0, 0, 0, 0]), [0, 0, 1, 0, 0])

    def test_kernel_to_conjugate_kernel(self, cube):
        ck = conjugation_apply(cube, kernel_vector(cube, 0.5).coeffs)
        np.testing.assert_allclose(ck, conjugate_kernel_vector(cube, 0.5).coeffs, atol=1e-15)

    def test_antilinear(self, cube):
        f = np.array([1, 2j, 0, 0, 0])
        np.testing.assert_allclose(conjugation_apply(cube, 1j * f), -1j * conjugation_apply(cube, f))

    def test_outside_model_space(self, cube):
        with pytest.raises(NotInModelSpace):
            conjugation_apply(cube, [0, 0, 0, 1, 0])

    @pytest.mark.parametrize("name", NAMES)
    def test_isometric_involutive(self, bases, name):
        b = bases[name]
        rng = np.random.default_rng(11)
        for _ in range(20):
            f = b.coeffs(rng.standard_normal(b.d) + 1j * rng.standard_normal(b.d))
            cf = conjugation_apply(b, f)
            assert abs(np.linalg.norm(cf) - np.linalg.norm(f)) <= 1e-9
            assert np.linalg.norm(conjugation_apply(b, cf) - f) <= 1e-9
        for lam in LAMBDAS:
            ck = conjugation_apply(b, kernel_vector(b, lam).coeffs)
            assert np.linalg.norm(ck - conjugate_kernel_vector(b, lam).coeffs) <= 1e-8

    @pytest.mark.parametrize("name", NAMES)
    def test_coordinate_form(self, bases, name):
        b = bases[name]
        x = np.arange(1, b.d + 1) * (1 - 0.5j)
        c = conjugation_matrix(b)
        np.testing.assert_allclose(b.coeffs(c @ np.conj(x)), conjugation_apply(b, b.coeffs(x)), atol=1e-12)


class TestDefect:
    def test_cube(self, cube):
        s = cube.shift
        lifted = cube.B @ s @ s.conj().T @ cube.B.conj().T
        np.testing.assert_allclose(lifted, np.diag([0, 1, 1, 0, 0]), atol=1e-15)
        rep = defect_report(cube)
        assert rep.r1 <= 1e-12
        assert rep.ranks[3] == 3
        assert rep.k0_norm_sq == pytest.approx(1.0)

    def test_half_blaschke(self, bases):
        rep = defect_report(bases["b05"])
        assert rep.r1 <= 1e-8
        assert rep.k0_norm_sq == pytest.approx(0.75, abs=1e-12)
        assert rep.expected_k0_norm_sq == pytest.approx(0.75, abs=1e-15)

    @pytest.mark.parametrize("name", NAMES)
    def test_iterated_identity(self, bases, name):
        b = bases[name]
        rep = defect_report(b, n_max=b.d + 2)
        assert max(rep.residuals.values()) <= 1e-8
        for n, r in rep.ranks.items():
            assert r <= n


@pytest.mark.parametrize("name", NAMES)
def test_basis_invariants(bases, name):
    b = bases[name]
    assert np.linalg.norm(b.B.conj().T @ b.B - np.eye(b.d), 2) <= 1e-10
    assert operator_norm(b.shift) <= 1 + 1e-10
    back = shift_matrix(b.N).conj().T @ b.B
    assert np.linalg.norm((back - b.projector @ back)[:-1], 2) <= 1e-8


@pytest.mark.parametrize("name", NAMES)
def test_shift_eigenvalues_are_zeros(bases, name):
    b = bases[name]
    assert matched_distance(np.linalg.eigvals(b.shift), b.spec.zeros) <= 1e-6


zero_st = st.builds(lambda r, t: complex(r * np.exp(1j * t)), st.floats(0.0, 0.7), st.floats(0, 2 * np.pi))


@given(zeros=st.lists(zero_st, min_size=1, max_size=5))
@settings(max_examples=25, deadline=None)
def test_random_blaschke_identities(zeros):
    b = extract_basis(make_blaschke(zeros))
    assert b.d == len(zeros)
    assert np.linalg.norm(b.B.conj().T @ b.B - np.eye(b.d), 2) <= 1e-10
    assert operator_norm(b.shift) <= 1 + 1e-10
    rep = defect_report(b)
    assert rep.r1 <= 1e-8
    assert max(rep.residuals.values()) <= 1e-8
    k0 = kernel_vector(b, 0).coords
    for lam in (0.3, -0.5j):
        kt = conjugate_kernel_vector(b, lam).coords
        assert np.linalg.norm(b.shift @ kt - (lam * kt - evaluate(b.spec, lam) * k0)) <= 1e-8
