"""Coefficient recurrences with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built; setting the environment
variable ``MODELSPACE_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _fallback

fallback = _fallback

try:
    if os.environ.get("MODELSPACE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _ext as compiled
except ImportError:
    compiled = None

_impl = compiled if compiled is not None else _fallback
BACKEND = "cython" if compiled is not None else "python"

exp_series = _impl.exp_series
blaschke_expand = _impl.blaschke_expand
synthetic_division = _impl.synthetic_division

__all__ = [
    "BACKEND",
    "blaschke_expand",
    "compiled",
    "exp_series",
    "fallback",
    "synthetic_division",
]
