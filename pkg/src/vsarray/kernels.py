"""Backend selection for the spectral-search kernels.

The compiled extension (vsarray._kernels, Cython) is used when available; the
numpy implementation (vsarray._kernels_py) is the fallback.  Set
VSARRAY_BACKEND=python or VSARRAY_BACKEND=cython before import to force a
backend; the default "auto" prefers the extension.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND_ENV = "VSARRAY_BACKEND"


def _select():
    choice = os.environ.get(BACKEND_ENV, "auto")
    if choice not in ("auto", "cython", "python"):
        raise ValueError(
            f"{BACKEND_ENV} must be auto, cython, or python, got {choice!r}"
        )
    if choice != "python":
        try:
            from . import _kernels

            return _kernels, "cython"
        except ImportError:
            if choice == "cython":
                raise
    return _kernels_py, "python"


_impl, BACKEND = _select()


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return BACKEND


def spectrum_denominator(en, positions, psis) -> np.ndarray:
    """MUSIC denominator ||a(psi)^H En||^2 on a grid of psi values."""
    en = np.ascontiguousarray(en, dtype=np.complex128)
    positions = np.ascontiguousarray(positions, dtype=np.float64)
    psis = np.ascontiguousarray(psis, dtype=np.float64)
    return np.asarray(_impl.spectrum_denominator(en, positions, psis))


def rank1_complement_denominator(c, positions, psis) -> np.ndarray:
    """Complement-projection denominator ||a||^2 - |c^H a(psi)|^2 on a grid."""
    c = np.ascontiguousarray(c, dtype=np.complex128)
    positions = np.ascontiguousarray(positions, dtype=np.float64)
    psis = np.ascontiguousarray(psis, dtype=np.float64)
    return np.asarray(_impl.rank1_complement_denominator(c, positions, psis))
