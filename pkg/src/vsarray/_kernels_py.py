"""Numpy implementations of the spectral-search kernels.

Reference backend for the optional compiled extension; both must return the
same values to rounding.  Inputs are normalized by vsarray.kernels before the
call: en complex128 C-order, positions/psis float64 1-D.
"""

import numpy as np


def spectrum_denominator(en, positions, psis):
    """den[g] = || a(psi_g)^H En ||^2 over the steering manifold."""
    a = np.exp(1j * np.pi * np.outer(psis, positions))
    m = a.conj() @ en
    return np.einsum("gq,gq->g", m, m.conj()).real


def rank1_complement_denominator(c, positions, psis):
    """den[g] = ||a||^2 - |c^H a(psi_g)|^2 for a unit-norm column c.

    Equals the noise-subspace projection ||G^H a||^2 where G spans the
    orthogonal complement of c; unit-modulus steering entries make
    ||a||^2 = P exactly.
    """
    a = np.exp(1j * np.pi * np.outer(psis, positions))
    proj = a @ np.conj(c)
    return float(positions.size) - (proj.real**2 + proj.imag**2)
