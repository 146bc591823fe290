"""Dense complex linear algebra for the small (at most 9x9) matrices used here.

All routines operate on plain numpy arrays. Hamiltonians carry angular
frequencies (rad/us); density matrices are dimensionless, Hermitian,
unit-trace and positive.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class ContractViolation(ValueError):
    """Input violates a documented numerical contract."""


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def is_hermitian(m: np.ndarray, rtol: float = 1e-12) -> bool:
    scale = max(float(np.abs(m).max()), 1.0)
    return float(np.abs(m - dagger(m)).max()) <= rtol * scale


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor on the left (slow index)."""
    return np.kron(a, b)


def partial_trace(rho: np.ndarray, keep: str = "first", dims: tuple[int, int] = (2, 2)) -> np.ndarray:
    """Trace out one factor of a bipartite matrix.

    Parameters
    ----------
    rho : square matrix of size prod(dims)
    keep : 'first' or 'second', the subsystem kept
    dims : subsystem dimensions, (2, 2) by default
    """
    da, db = dims
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"partial_trace needs a square matrix, got shape {rho.shape}")
    if rho.shape[0] != da * db:
        raise ValueError(f"matrix dimension {rho.shape[0]} does not match subsystems {dims}")
    r = rho.reshape(da, db, da, db)
    if keep == "first":
        return np.einsum("abcb->ac", r)
    if keep == "second":
        return np.einsum("abad->bd", r)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")


@dataclass
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` ascend; ``eigenvectors`` holds the matching orthonormal
    eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m: np.ndarray, rtol: float = 1e-9) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, rtol):
        raise ContractViolation("hermitian_eig: matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return Spectrum(eigenvalues=w, eigenvectors=v)


def matrix_exp(m: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """exp(scale * m) for a general square matrix."""
    return scipy.linalg.expm(np.asarray(m, dtype=complex) * scale)


def vn_entropy(rho: np.ndarray, log_base: str = "natural", atol: float = 1e-9) -> float:
    """Von Neumann entropy -Tr(rho ln rho), in nats or bits.

    Eigenvalues in [-atol, 0) are treated as integrator round-off and
    clipped to zero; anything more negative is rejected. Callers working
    on propagated states pass the integrator's positivity budget as atol.
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho, 1e-9):
        raise ContractViolation("vn_entropy: density matrix is not Hermitian")
    tr = float(np.real(np.trace(rho)))
    if abs(tr - 1.0) > 1e-9:
        raise ContractViolation(f"vn_entropy: trace is {tr}, expected 1 within 1e-9")
    w = np.linalg.eigvalsh(rho)
    if w.min() < -atol:
        raise ContractViolation(f"vn_entropy: eigenvalue {w.min()} below -{atol}")
    w = np.clip(w, 0.0, None)
    w = w[w > 1e-12]
    s = float(-np.sum(w * np.log(w)))
    s = max(s, 0.0)
    if log_base == "two":
        s /= np.log(2.0)
    elif log_base != "natural":
        raise ValueError(f"log_base must be 'natural' or 'two', got {log_base!r}")
    return s
