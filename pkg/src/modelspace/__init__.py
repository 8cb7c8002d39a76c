"""Numerical model spaces ``K_Theta = H^2 (-) Theta H^2``.

Compressed shifts, reproducing and conjugate kernels, the conjugation, and
diagnostics for the asymptotic sequence ``S^{*n} A S^n``.
"""
from ._kernels import BACKEND
from .asymptotics import (
    CompactnessScore,
    DecayCurve,
    FixedPointReport,
    Verdict,
    asymptotic_sequence,
    compactness_score,
    decay_curve,
    feintuch_split_h2,
    fixed_point_gap,
    strong_probe,
    unitary_equiv_check,
)
from .errors import *  # noqa: F401,F403
from .hardy import h2_asymptotic_block, hankel_matrix, shift_matrix, toeplitz_matrix
from .inner import (
    BlaschkeSpec,
    InnerFunctionSpec,
    ProductSpec,
    SingularSpec,
    evaluate,
    make_blaschke,
    make_product,
    make_singular,
    taylor_coefficients,
    verify_inner,
)
from .model_space import (
    ModelSpaceBasis,
    OperatorOnK,
    auto_truncation,
    compress,
    compressed_shift,
    conjugate_kernel_vector,
    conjugation_apply,
    defect_report,
    extract_basis,
    kernel_vector,
    projection_matrix,
)

__version__ = "0.1.0"
