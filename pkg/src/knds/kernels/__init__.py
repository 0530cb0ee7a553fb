"""Hot kernels with a compiled core and a pure-Python fallback.

The Cython extension ``_ckernels`` is used when it was built; otherwise the
identical algorithm in ``_pykernels`` is used.  ``use_backend`` switches the
active implementation at runtime (benchmarks and backend-parity tests).
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = [
    "BACKEND",
    "available_backends",
    "use_backend",
    "get_backend",
    "horizon_poly",
    "horizon_poly_deriv",
    "cubic_max_real_root",
    "depressed_quartic_roots",
    "polish_root",
    "solve_horizon_quartic",
    "solve_horizon_quartic_batch",
]

_EXPORTS = [name for name in __all__ if name not in
            ("BACKEND", "available_backends", "use_backend", "get_backend")]


def available_backends():
    names = ["python"]
    if _ckernels is not None:
        names.insert(0, "cython")
    return names


def get_backend(name):
    """Return the kernel module for ``name`` ("cython" or "python")."""
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("the Cython kernels were not built")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


def use_backend(name):
    """Make ``name`` the active backend for this module's functions."""
    mod = get_backend(name)
    g = globals()
    for attr in _EXPORTS:
        g[attr] = getattr(mod, attr)
    g["BACKEND"] = mod.BACKEND
    return mod.BACKEND


BACKEND = None
use_backend(available_backends()[0])
