"""Complex dense linear-algebra kernel shared by all modules.

Thin wrappers around LAPACK (via numpy) that enforce the input/output
contracts the rest of the package relies on: Hermitian eigendecompositions
returned in descending eigenvalue order, and a Moore-Penrose pseudo-inverse
with a relative singular-value cutoff.
"""

import numpy as np

from .errors import ContractViolation

HERMITIAN_RTOL = 1e-8


def _as_matrix(a):
    a = np.asarray(a)
    if a.ndim != 2:
        raise ContractViolation(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ContractViolation("matrix contains non-finite entries")
    return a.astype(np.complex128, copy=False)


def hermitian_eig(a):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (eigenvalues, eigenvectors) with eigenvector columns matching the
    eigenvalue order.  Raises ContractViolation for non-square input or input
    that is not Hermitian within 1e-8 of its largest entry.
    """
    a = _as_matrix(a)
    n, m = a.shape
    if n != m:
        raise ContractViolation(f"hermitian_eig needs a square matrix, got {n}x{m}")
    scale = np.abs(a).max()
    if scale > 0 and np.abs(a - a.conj().T).max() > HERMITIAN_RTOL * scale:
        raise ContractViolation("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(a)
    # eigh returns ascending order; the subspace split indexes the top-K columns
    return w[::-1].copy(), v[:, ::-1].copy()


def pseudo_inverse(a, tol=1e-12):
    """Moore-Penrose pseudo-inverse with relative cutoff tol * sigma_max.

    An all-zero matrix yields the all-zero transpose-shaped matrix (rank 0).
    """
    a = _as_matrix(a)
    if not 0.0 < tol < 1.0:
        raise ContractViolation(f"tol must be in (0, 1), got {tol}")
    if not a.any():
        return np.zeros((a.shape[1], a.shape[0]), dtype=np.complex128)
    return np.linalg.pinv(a, rcond=tol)
