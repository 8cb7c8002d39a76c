"""File formats: complex-matrix CSV, decay-curve CSV, symbol CSV, basis files.

Matrix CSV: first line ``rows,cols``, then one ``row,col,re,im`` line per
entry in row-major order.  Floats are written with 17 significant digits so
they round-trip exactly.
"""
from __future__ import annotations

import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ConfigError, DimensionMismatch
from .inner import spec_from_json, spec_to_json


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def matrix_to_csv(m) -> str:
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    out = io.StringIO()
    out.write(f"{rows},{cols}\n")
    for j in range(rows):
        for k in range(cols):
            z = m[j, k]
            out.write(f"{j},{k},{fmt(z.real)},{fmt(z.imag)}\n")
    return out.getvalue()


def matrix_from_csv(text: str, where: str = "matrix") -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError(f"{where}: empty matrix file")
    try:
        rows, cols = (int(x) for x in lines[0].split(","))
    except ValueError as exc:
        raise ConfigError(f"{where}:1: expected 'rows,cols', got {lines[0]!r}") from exc
    if rows < 1 or cols < 1:
        raise DimensionMismatch(f"{where}: dimensions must be positive, got {rows}x{cols}")
    m = np.zeros((rows, cols), dtype=complex)
    seen = np.zeros((rows, cols), dtype=bool)
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        try:
            j, k = int(parts[0]), int(parts[1])
            re, im = float(parts[2]), float(parts[3])
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"{where}:{lineno}: expected 'row,col,re,im', got {ln!r}") from exc
        if not (0 <= j < rows and 0 <= k < cols):
            raise DimensionMismatch(f"{where}:{lineno}: entry ({j},{k}) outside {rows}x{cols}")
        m[j, k] = complex(re, im)
        seen[j, k] = True
    if not seen.all():
        raise ConfigError(f"{where}: {int((~seen).sum())} entries missing")
    return m


def read_matrix(path) -> np.ndarray:
    return matrix_from_csv(Path(path).read_text(), str(path))


def write_matrix(path, m) -> None:
    atomic_write(path, matrix_to_csv(m))


def curve_to_csv(curve) -> str:
    out = io.StringIO()
    out.write("n,value\n")
    for n, v in curve.entries:
        out.write(f"{n},{fmt(v)}\n")
    return out.getvalue()


def read_symbol(path) -> dict[int, complex]:
    """Symbol CSV: header ``m,re,im`` then one line per coefficient ``t_m``."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines or lines[0].replace(" ", "") != "m,re,im":
        raise ConfigError(f"{path}:1: expected header 'm,re,im'")
    out = {}
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            m, re, im = ln.split(",")
            out[int(m)] = out.get(int(m), 0) + complex(float(re), float(im))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: expected 'm,re,im', got {ln!r}") from exc
    return out


def symbol_to_json(symbol) -> dict:
    return {str(m): {"re": complex(t).real, "im": complex(t).imag} for m, t in sorted(symbol.items())}


def basis_to_text(basis) -> str:
    header = {
        "spec": spec_to_json(basis.spec),
        "N": basis.N,
        "d": basis.d,
        "eig_gap": basis.eig_gap,
        "isometry_defect": basis.isometry_defect,
    }
    return json.dumps(header, sort_keys=True) + "\n" + matrix_to_csv(basis.B)


def write_basis(path, basis) -> None:
    atomic_write(path, basis_to_text(basis))


def read_basis(path):
    """Load a basis file; Theta's coefficients are recomputed from the spec."""
    from .inner import taylor_coefficients
    from .model_space import ModelSpaceBasis

    text = Path(path).read_text()
    first, _, rest = text.partition("\n")
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:1: bad JSON header: {exc.msg}") from exc
    spec = spec_from_json(header["spec"], "spec")
    B = matrix_from_csv(rest, str(path))
    N = int(header["N"])
    if B.shape != (N, int(header["d"])):
        raise DimensionMismatch(f"{path}: matrix is {B.shape}, header says {N}x{header['d']}")
    theta = taylor_coefficients(spec, 2 * N)
    for a in (B, theta):
        a.setflags(write=False)
    return ModelSpaceBasis(
        spec=spec,
        N=N,
        B=B,
        eig_gap=float(header["eig_gap"]),
        isometry_defect=float(header["isometry_defect"]),
        theta=theta,
        eigenvalues=np.array([]),
    )
