import numpy as np
import pytest

from vsarray.errors import ContractViolation
from vsarray.numerics import hermitian_eig, pseudo_inverse


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_eig_identity():
    w, v = hermitian_eig(np.eye(3, dtype=complex))
    assert np.allclose(w, 1.0)
    assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-10)


def test_eig_diagonal_descending():
    w, v = hermitian_eig(np.diag([3.0, 1.0]).astype(complex))
    assert np.allclose(w, [3.0, 1.0])
    assert np.allclose(np.abs(v), np.eye(2), atol=1e-12)


def test_eig_reconstruction_and_orthonormality():
    a = random_hermitian(8, 123)
    w, v = hermitian_eig(a)
    fro = np.linalg.norm(a)
    assert np.all(np.diff(w) <= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - a) <= 1e-10 * fro
    assert np.max(np.abs(v.conj().T @ v - np.eye(8))) <= 1e-10
    # eigen equation holds entrywise
    assert np.max(np.abs(a @ v - v * w)) <= 1e-10 * fro


def test_eig_psd_eigenvalues_nonnegative():
    rng = np.random.default_rng(7)
    b = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
    w, _ = hermitian_eig(b @ b.conj().T)
    assert np.all(w >= -1e-10 * w[0])


def test_eig_rejects_non_square_and_non_hermitian():
    with pytest.raises(ContractViolation):
        hermitian_eig(np.ones((2, 3), dtype=complex))
    bad = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(ContractViolation):
        hermitian_eig(bad)


def test_eig_rejects_non_finite():
    a = np.eye(2, dtype=complex)
    a[0, 0] = np.nan
    with pytest.raises(ContractViolation):
        hermitian_eig(a)


def test_pinv_unitary_is_adjoint():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    assert np.allclose(pseudo_inverse(q), q.conj().T, atol=1e-12)


def test_pinv_zero_matrix():
    out = pseudo_inverse(np.zeros((3, 2), dtype=complex))
    assert out.shape == (2, 3)
    assert np.all(out == 0)


def test_pinv_moore_penrose_identities():
    rng = np.random.default_rng(42)
    a = rng.standard_normal((8, 10)) + 1j * rng.standard_normal((8, 10))
    ap = pseudo_inverse(a)
    fro = np.linalg.norm(a)
    assert np.linalg.norm(a @ ap @ a - a) <= 1e-8 * fro
    assert np.linalg.norm(ap @ a @ ap - ap) <= 1e-8 * fro
    assert np.allclose(a @ ap, (a @ ap).conj().T, atol=1e-8)
    assert np.allclose(ap @ a, (ap @ a).conj().T, atol=1e-8)


def test_pinv_involution_full_rank():
    rng = np.random.default_rng(9)
    a = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
    assert np.allclose(pseudo_inverse(pseudo_inverse(a)), a, atol=1e-8)


def test_pinv_tol_domain():
    a = np.eye(2, dtype=complex)
    for tol in (0.0, 1.0, -0.5):
        with pytest.raises(ContractViolation):
            pseudo_inverse(a, tol=tol)
