"""Inner functions on the unit disk: specification, evaluation, Taylor
coefficients.

Three families are supported:

* finite Blaschke products ``c * prod_j (|a_j|/a_j) (a_j - z) / (1 - conj(a_j) z)``
  (a zero at the origin contributes the factor ``z``),
* atomic singular inner functions ``exp(-sum_i m_i (xi_i + z) / (xi_i - z))``
  with ``xi_i = exp(1j * angle_i)``,
* finite products of the above.

Specs are immutable and validated on construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Sequence

import numpy as np

from . import _kernels
from .errors import (
    BadRadius,
    ConfigError,
    EmptySpec,
    NonPositiveMass,
    NotUnimodular,
    OutsideDisk,
    ZeroOnBoundary,
)

ZERO_MARGIN = 1e-9
UNIMODULAR_TOL = 1e-12
TWO_PI = 2.0 * math.pi


class InnerFunctionSpec:
    """Common base of the inner-function families."""

    kind: ClassVar[str]

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class BlaschkeSpec(InnerFunctionSpec):
    zeros: tuple[complex, ...]
    unimodular: complex = 1 + 0j
    kind: ClassVar[str] = "blaschke"

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        if not zeros:
            raise EmptySpec("a Blaschke product needs at least one zero")
        for a in zeros:
            if not math.isfinite(abs(a)) or abs(a) >= 1.0 - ZERO_MARGIN:
                raise ZeroOnBoundary(f"zero {a} is not inside |z| < 1 - {ZERO_MARGIN:g}")
        c = complex(self.unimodular)
        if not abs(abs(c) - 1.0) < UNIMODULAR_TOL:
            raise NotUnimodular(f"unimodular factor {c} has modulus {abs(c)!r}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "unimodular", c)

    @property
    def degree(self) -> int:
        return len(self.zeros)


@dataclass(frozen=True)
class SingularSpec(InnerFunctionSpec):
    atoms: tuple[tuple[float, float], ...]
    kind: ClassVar[str] = "singular"

    def __post_init__(self):
        atoms = []
        for angle, mass in self.atoms:
            angle, mass = float(angle), float(mass)
            if not (math.isfinite(mass) and mass > 0.0):
                raise NonPositiveMass(f"atom mass must be > 0, got {mass!r}")
            if not math.isfinite(angle):
                raise ConfigError(f"atom angle must be finite, got {angle!r}")
            atoms.append((angle % TWO_PI, mass))
        if not atoms:
            raise EmptySpec("a singular inner function needs at least one atom")
        object.__setattr__(self, "atoms", tuple(atoms))

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * np.array([a for a, _ in self.atoms]))

    @property
    def masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms])


@dataclass(frozen=True)
class ProductSpec(InnerFunctionSpec):
    factors: tuple[InnerFunctionSpec, ...] = field(default_factory=tuple)
    kind: ClassVar[str] = "product"

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise EmptySpec("a product needs at least one factor")
        for f in factors:
            if not isinstance(f, InnerFunctionSpec):
                raise ConfigError(f"product factor {f!r} is not an inner-function spec")
        object.__setattr__(self, "factors", factors)


def make_blaschke(zeros: Sequence[complex], unimodular_factor: complex = 1.0) -> BlaschkeSpec:
    return BlaschkeSpec(tuple(zeros), unimodular_factor)


def make_singular(atoms: Sequence[tuple[float, float]]) -> SingularSpec:
    """Atomic singular inner function; ``atoms`` holds ``(angle, mass)`` pairs."""
    return SingularSpec(tuple((a, m) for a, m in atoms))


def make_product(factors: Sequence[InnerFunctionSpec]) -> ProductSpec:
    return ProductSpec(tuple(factors))


def blaschke_degree(spec: InnerFunctionSpec) -> int | None:
    """Number of zeros if ``spec`` is a finite Blaschke product, else None."""
    zeros = blaschke_zeros(spec)
    return None if zeros is None else len(zeros)


def blaschke_zeros(spec: InnerFunctionSpec) -> list[complex] | None:
    """Zero list of a finite Blaschke product (products of Blaschke factors
    included), or None when a singular factor is present."""
    if isinstance(spec, BlaschkeSpec):
        return list(spec.zeros)
    if isinstance(spec, ProductSpec):
        out = []
        for f in spec.factors:
            z = blaschke_zeros(f)
            if z is None:
                return None
            out.extend(z)
        return out
    return None


def singular_points(spec: InnerFunctionSpec) -> list[complex]:
    """Boundary points carrying singular mass."""
    if isinstance(spec, SingularSpec):
        return list(spec.points)
    if isinstance(spec, ProductSpec):
        return [p for f in spec.factors for p in singular_points(f)]
    return []


def evaluate(spec: InnerFunctionSpec, z):
    """Evaluate Theta at a point or array of points in the open disk."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z_arr)) or np.any(np.abs(z_arr) >= 1.0):
        raise OutsideDisk("evaluation point must satisfy |z| < 1")
    out = _evaluate(spec, z_arr)
    return complex(out) if out.ndim == 0 else out


def _evaluate(spec, z):
    if isinstance(spec, BlaschkeSpec):
        out = np.full(z.shape, spec.unimodular, dtype=complex)
        for a in spec.zeros:
            if a == 0:
                out = out * z
            else:
                unit = a.conjugate() / abs(a)
                out = out * (unit / abs(unit)) * (a - z) / (1.0 - a.conjugate() * z)
        return out
    if isinstance(spec, SingularSpec):
        expo = np.zeros(z.shape, dtype=complex)
        for xi, m in zip(spec.points, spec.masses):
            expo = expo - m * (xi + z) / (xi - z)
        return np.exp(expo)
    if isinstance(spec, ProductSpec):
        out = np.ones(z.shape, dtype=complex)
        for f in spec.factors:
            out = out * _evaluate(f, z)
        return out
    raise TypeError(f"not an inner-function spec: {spec!r}")


def taylor_coefficients(spec: InnerFunctionSpec, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients of Theta at the origin."""
    n = int(n)
    if n < 1:
        raise ValueError("need at least one coefficient")
    if isinstance(spec, BlaschkeSpec):
        return spec.unimodular * _kernels.blaschke_expand(spec.zeros, n)
    if isinstance(spec, SingularSpec):
        # log Theta = -sum m (xi + z)/(xi - z) = -sum m (1 + 2 sum_k (z/xi)^k)
        g = np.zeros(n, dtype=complex)
        k = np.arange(1, n)
        for xi, m in zip(spec.points, spec.masses):
            g[0] -= m
            g[1:] -= 2.0 * m * np.conj(xi) ** k
        return _kernels.exp_series(g)
    if isinstance(spec, ProductSpec):
        out = taylor_coefficients(spec.factors[0], n)
        for f in spec.factors[1:]:
            out = np.convolve(out, taylor_coefficients(f, n))[:n]
        return out
    raise TypeError(f"not an inner-function spec: {spec!r}")


def reflect(spec: InnerFunctionSpec) -> InnerFunctionSpec:
    """Spec of ``Psi(z) = conj(Theta(conj(z)))``."""
    if isinstance(spec, BlaschkeSpec):
        return BlaschkeSpec(
            tuple(a.conjugate() for a in spec.zeros), spec.unimodular.conjugate()
        )
    if isinstance(spec, SingularSpec):
        return SingularSpec(tuple((-a, m) for a, m in spec.atoms))
    if isinstance(spec, ProductSpec):
        return ProductSpec(tuple(reflect(f) for f in spec.factors))
    raise TypeError(f"not an inner-function spec: {spec!r}")


@dataclass(frozen=True)
class InnerCheck:
    """Outcome of :func:`verify_inner`."""

    radius: float
    grid_size: int
    boundary_deviation: float
    interior_excess: float
    excluded_points: int

    @property
    def bounded(self) -> bool:
        return self.interior_excess <= 1e-12


def verify_inner(spec: InnerFunctionSpec, r: float, grid_size: int) -> InnerCheck:
    """Check near-unimodularity on the circle of radius ``r`` and the bound
    ``|Theta| <= 1`` inside it.

    Points within ``10 * (1 - r)`` radians of a singular atom are skipped on
    the outer circle, since the radial limit degenerates there.
    """
    r = float(r)
    if not 0.0 < r < 1.0:
        raise BadRadius(f"radius must lie in (0, 1), got {r!r}")
    grid_size = int(grid_size)
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    angles = TWO_PI * np.arange(grid_size) / grid_size
    keep = np.ones(grid_size, dtype=bool)
    delta = 10.0 * (1.0 - r)
    for p in singular_points(spec):
        dist = np.abs(np.angle(np.exp(1j * angles) / p))
        keep &= dist > delta
    outer = evaluate(spec, r * np.exp(1j * angles[keep]))
    boundary = float(np.max(np.abs(np.abs(outer) - 1.0))) if outer.size else 0.0
    radii = np.linspace(0.0, r, 9)
    inner = evaluate(spec, np.outer(radii, np.exp(1j * angles)))
    return InnerCheck(
        radius=r,
        grid_size=grid_size,
        boundary_deviation=boundary,
        interior_excess=float(np.max(np.abs(inner) - 1.0)),
        excluded_points=int(grid_size - keep.sum()),
    )


# -- JSON schema -------------------------------------------------------------

def _complex_from_json(obj, where):
    try:
        return complex(float(obj["re"]), float(obj.get("im", 0.0)))
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"{where}: expected {{'re': ..., 'im': ...}}, got {obj!r}") from exc


def spec_from_json(obj, where: str = "inner") -> InnerFunctionSpec:
    """Build a spec from its JSON form (already decoded into dicts/lists)."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise ConfigError(f"{where}: expected an object with a 'type' field")
    kind = obj["type"]
    if kind == "blaschke":
        zeros = [_complex_from_json(z, f"{where}.zeros[{i}]") for i, z in enumerate(obj.get("zeros", []))]
        c = _complex_from_json(obj["unimodular"], f"{where}.unimodular") if "unimodular" in obj else 1.0
        return make_blaschke(zeros, c)
    if kind == "singular":
        atoms = []
        for i, a in enumerate(obj.get("atoms", [])):
            try:
                atoms.append((float(a["angle"]), float(a["mass"])))
            except (TypeError, KeyError, ValueError) as exc:
                raise ConfigError(f"{where}.atoms[{i}]: expected {{'angle', 'mass'}}") from exc
        return make_singular(atoms)
    if kind == "product":
        factors = obj.get("factors", [])
        if not isinstance(factors, list):
            raise ConfigError(f"{where}.factors: expected a list")
        return make_product(
            [spec_from_json(f, f"{where}.factors[{i}]") for i, f in enumerate(factors)]
        )
    raise ConfigError(f"{where}.type: unknown inner-function type {kind!r}")


def spec_to_json(spec: InnerFunctionSpec) -> dict:
    if isinstance(spec, BlaschkeSpec):
        return {
            "type": "blaschke",
            "zeros": [{"re": a.real, "im": a.imag} for a in spec.zeros],
            "unimodular": {"re": spec.unimodular.real, "im": spec.unimodular.imag},
        }
    if isinstance(spec, SingularSpec):
        return {"type": "singular", "atoms": [{"angle": a, "mass": m} for a, m in spec.atoms]}
    if isinstance(spec, ProductSpec):
        return {"type": "product", "factors": [spec_to_json(f) for f in spec.factors]}
    raise TypeError(f"not an inner-function spec: {spec!r}")
