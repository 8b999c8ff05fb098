# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectral-search kernels.

Hot loops of the estimator: evaluating MUSIC denominators over a dense
sin-domain grid dominates the run time of every experiment, so these two
kernels are provided in C alongside the numpy fallback (vsarray._kernels_py).

Sensor and virtual positions are integers in half-wavelength units, so the
quadratic form a^H (En En^H) a collapses onto co-array lags: with c_l the
sum of projector entries at lag l = p_i - p_j, den(psi) = c_0 +
2 sum_{l>0} Re(conj(c_l) e^{j pi l psi}).  Each grid point then costs one
cos/sin pair plus a phasor recurrence over the lags instead of a dense
matrix-vector product.  Non-integer positions fall back to the direct form.
"""

import numpy as np

from libc.math cimport cos, sin, M_PI


cdef _integer_lags(const double[::1] positions):
    p = np.asarray(positions)
    rounded = np.rint(p)
    if not np.all(np.abs(p - rounded) < 1e-9):
        return None
    return rounded.astype(np.int64)


def _lag_weights(const double complex[:, :] en, p_int):
    """Collapse the noise projector onto non-negative integer lags."""
    g = np.dot(en, np.asarray(en).conj().T)
    lag = p_int[:, None] - p_int[None, :]
    shift = (lag + lag.max()).ravel()
    c_r = np.bincount(shift, weights=g.real.ravel())
    c_i = np.bincount(shift, weights=g.imag.ravel())
    # keep lags >= 0; the negative half is the conjugate by Hermitian symmetry
    half = lag.max()
    return c_r[half:].copy(), c_i[half:].copy()


def spectrum_denominator(const double complex[:, :] en,
                         const double[::1] positions,
                         const double[::1] psis):
    """den[g] = || a(psi_g)^H En ||^2 over the steering manifold."""
    p_int = _integer_lags(positions)
    if p_int is None:
        return _spectrum_direct(en, positions, psis)
    c_r_arr, c_i_arr = _lag_weights(en, p_int)

    cdef double[::1] c_r = c_r_arr
    cdef double[::1] c_i = c_i_arr
    cdef Py_ssize_t n_g = psis.shape[0]
    cdef Py_ssize_t n_l = c_r.shape[0]
    out = np.empty(n_g, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef Py_ssize_t g, l
    cdef double zr, zi, tr, ti, tmp, acc
    for g in range(n_g):
        zr = cos(M_PI * psis[g])
        zi = sin(M_PI * psis[g])
        tr = 1.0
        ti = 0.0
        acc = c_r[0]
        for l in range(1, n_l):
            tmp = tr * zr - ti * zi
            ti = tr * zi + ti * zr
            tr = tmp
            acc += 2.0 * (c_r[l] * tr + c_i[l] * ti)
        out_v[g] = acc
    return out


def _spectrum_direct(const double complex[:, :] en,
                     const double[::1] positions,
                     const double[::1] psis):
    cdef Py_ssize_t n_g = psis.shape[0]
    cdef Py_ssize_t n_p = positions.shape[0]
    cdef Py_ssize_t n_q = en.shape[1]
    out = np.empty(n_g, dtype=np.float64)
    cdef double[::1] out_v = out
    steer = np.empty(2 * n_p, dtype=np.float64)
    cdef double[::1] sv = steer
    cdef Py_ssize_t g, i, q
    cdef double ph, cr, ci, er, ei, acc
    for g in range(n_g):
        for i in range(n_p):
            ph = M_PI * positions[i] * psis[g]
            sv[2 * i] = cos(ph)
            sv[2 * i + 1] = -sin(ph)  # conj of the steering entry
        acc = 0.0
        for q in range(n_q):
            cr = 0.0
            ci = 0.0
            for i in range(n_p):
                er = en[i, q].real
                ei = en[i, q].imag
                cr += sv[2 * i] * er - sv[2 * i + 1] * ei
                ci += sv[2 * i] * ei + sv[2 * i + 1] * er
            acc += cr * cr + ci * ci
        out_v[g] = acc
    return out


def rank1_complement_denominator(const double complex[::1] c,
                                 const double[::1] positions,
                                 const double[::1] psis):
    """den[g] = ||a||^2 - |c^H a(psi_g)|^2 for a unit-norm column c."""
    cdef Py_ssize_t n_g = psis.shape[0]
    cdef Py_ssize_t n_p = positions.shape[0]
    out = np.empty(n_g, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef Py_ssize_t g, i
    cdef double ph, ar, ai, pr, pi
    for g in range(n_g):
        pr = 0.0
        pi = 0.0
        for i in range(n_p):
            ph = M_PI * positions[i] * psis[g]
            ar = cos(ph)
            ai = sin(ph)
            # conj(c_i) * a_i
            pr += c[i].real * ar + c[i].imag * ai
            pi += c[i].real * ai - c[i].imag * ar
        out_v[g] = <double> n_p - (pr * pr + pi * pi)
    return out
