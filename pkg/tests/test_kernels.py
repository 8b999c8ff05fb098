import os
import subprocess
import sys

import numpy as np
import pytest

from vsarray import _kernels_py
from vsarray import kernels

try:
    from vsarray import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None

needs_ext = pytest.mark.skipif(_kernels_cy is None, reason="compiled extension not built")


def cases():
    rng = np.random.default_rng(99)
    psis = np.linspace(-1.0, 1.0, 801)
    for positions in (
        np.arange(11, dtype=float),
        np.array([0, 2, 4, 5, 6, 8, 10, 15], dtype=float),
        rng.uniform(0.0, 12.0, 7),  # non-integer positions exercise the fallback
    ):
        n = positions.size
        en = rng.standard_normal((n, n - 2)) + 1j * rng.standard_normal((n, n - 2))
        en, _ = np.linalg.qr(en)
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        c /= np.linalg.norm(c)
        yield positions, en, c, psis


@needs_ext
def test_spectrum_denominator_backend_parity():
    for positions, en, _, psis in cases():
        ref = _kernels_py.spectrum_denominator(en, positions, psis)
        out = _kernels_cy.spectrum_denominator(en, positions, psis)
        assert np.allclose(out, ref, rtol=1e-9, atol=1e-11)


@needs_ext
def test_rank1_denominator_backend_parity():
    for positions, _, c, psis in cases():
        ref = _kernels_py.rank1_complement_denominator(c, positions, psis)
        out = _kernels_cy.rank1_complement_denominator(c, positions, psis)
        assert np.allclose(out, ref, rtol=1e-9, atol=1e-11)


def test_denominators_are_real_nonnegative():
    for positions, en, c, psis in cases():
        d1 = kernels.spectrum_denominator(en, positions, psis)
        d2 = kernels.rank1_complement_denominator(c, positions, psis)
        assert d1.dtype == np.float64 and d2.dtype == np.float64
        assert np.all(d1 >= -1e-10)
        assert np.all(d2 >= -1e-10)


def _backend_in_subprocess(value):
    env = dict(os.environ)
    if value is None:
        env.pop("VSARRAY_BACKEND", None)
    else:
        env["VSARRAY_BACKEND"] = value
    return subprocess.run(
        [sys.executable, "-c", "import vsarray; print(vsarray.backend_name())"],
        capture_output=True,
        text=True,
        env=env,
    )


def test_backend_env_selection():
    out = _backend_in_subprocess("python")
    assert out.returncode == 0 and out.stdout.strip() == "python"
    out = _backend_in_subprocess("nonsense")
    assert out.returncode != 0


@needs_ext
def test_backend_env_cython():
    out = _backend_in_subprocess("cython")
    assert out.returncode == 0 and out.stdout.strip() == "cython"
    out = _backend_in_subprocess(None)
    assert out.stdout.strip() == "cython"  # auto prefers the compiled kernels
