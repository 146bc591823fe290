"""Shared construction helpers for the test suite."""

import numpy as np


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density_matrix(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.real(np.trace(rho))


def random_unitary(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pure_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def bell_state():
    """|Phi+> = (|gg> + |ee>)/sqrt(2) as a density matrix."""
    v = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
    return np.outer(v, v.conj())


def werner_state(p):
    return p * bell_state() + (1.0 - p) * np.eye(4, dtype=complex) / 4.0


def classically_correlated_state():
    """diag(1/2, 0, 0, 1/2): one bit of classical correlation."""
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)


def taylor_expm(m, scale=1.0, terms=30):
    """Scaled-and-squaring Taylor series for exp(scale*m); independent of
    the eigendecomposition / Pade route."""
    a = np.asarray(m, dtype=complex) * scale
    norm = np.abs(a).sum(axis=1).max()
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-30) / 0.5))))
    b = a / (2.0**squarings)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ b / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def char_poly_coefficients(m):
    """Coefficients of det(lambda*I - M), highest power first, via the
    Faddeev-LeVerrier recursion."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = [1.0 + 0.0j]
    mk = np.zeros_like(m)
    ident = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = m @ (mk + coeffs[-1] * ident) if k > 1 else m.copy()
        coeffs.append(-np.trace(mk) / k)
    return np.array(coeffs)
