import numpy as np
import pytest

from helpers import (
    char_poly_coefficients,
    random_density_matrix,
    random_hermitian,
    random_unitary,
    taylor_expm,
)
from spinfreeze.hamiltonians import NVParams, nv_reduced_hamiltonian
from spinfreeze.linalg import (
    ContractViolation,
    hermitian_eig,
    kron,
    matrix_exp,
    partial_trace,
    vn_entropy,
)
from spinfreeze.operators import ID2, SIGMA_X, SIGMA_Z


class TestKron:
    def test_sigma_z_identity(self):
        assert np.array_equal(kron(SIGMA_Z, ID2), np.diag([1, 1, -1, -1]).astype(complex))

    def test_identity_identity(self):
        assert np.array_equal(kron(ID2, ID2), np.eye(4, dtype=complex))

    def test_sigma_z_sigma_z(self):
        assert np.array_equal(kron(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]).astype(complex))

    def test_associative_and_bilinear(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 2)
            c = random_hermitian(rng, 2)
            assert np.abs(kron(kron(a, b), c) - kron(a, kron(b, c))).max() <= 1e-12
            lhs = kron(2.0 * a + c, b)
            rhs = 2.0 * kron(a, b) + kron(c, b)
            assert np.abs(lhs - rhs).max() <= 1e-12


class TestPartialTrace:
    def test_bell_state_reduces_to_maximally_mixed(self):
        v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        rho = np.outer(v, v.conj())
        assert np.abs(partial_trace(rho, "first") - ID2 / 2).max() <= 1e-12

    def test_product_state_factorizes(self):
        ra = np.diag([0.3, 0.7]).astype(complex)
        rb = np.diag([0.9, 0.1]).astype(complex)
        assert np.abs(partial_trace(kron(ra, rb), "first") - ra).max() <= 1e-12
        assert np.abs(partial_trace(kron(ra, rb), "second") - rb).max() <= 1e-12

    def test_trace_preserved(self):
        rng = np.random.default_rng(3)
        rho = random_density_matrix(rng, 4)
        assert abs(np.trace(partial_trace(rho, "first")) - 1.0) <= 1e-9

    def test_random_product_states(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            ra = random_density_matrix(rng, 2)
            rb = random_density_matrix(rng, 2)
            assert np.abs(partial_trace(kron(ra, rb), "first") - ra).max() <= 1e-12

    def test_dimension_errors(self):
        with pytest.raises(ValueError):
            partial_trace(np.zeros((3, 4)))
        with pytest.raises(ValueError):
            partial_trace(np.zeros((5, 5)))

    def test_nine_level_bipartition(self):
        rng = np.random.default_rng(29)
        ra = random_density_matrix(rng, 3)
        rb = random_density_matrix(rng, 3)
        got = partial_trace(kron(ra, rb), "second", dims=(3, 3))
        assert np.abs(got - rb).max() <= 1e-12


class TestHermitianEig:
    def test_pauli_x_spectrum(self):
        spec = hermitian_eig(SIGMA_X)
        assert np.allclose(spec.eigenvalues, [-1.0, 1.0], atol=1e-12)

    def test_diagonal_sorted(self):
        spec = hermitian_eig(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(spec.eigenvalues, [1.0, 2.0, 3.0], atol=1e-12)

    def test_reconstruction(self):
        rng = np.random.default_rng(5)
        for dim in (2, 4, 9):
            m = random_hermitian(rng, dim)
            spec = hermitian_eig(m)
            v = spec.eigenvectors
            recon = v @ np.diag(spec.eigenvalues) @ v.conj().T
            scale = max(np.abs(m).max(), 1.0)
            assert np.abs(recon - m).max() <= 1e-10 * scale
            assert np.abs(v.conj().T @ v - np.eye(dim)).max() <= 1e-10

    def test_reduced_hamiltonian_against_characteristic_polynomial(self):
        # Oracle: quartic characteristic polynomial rooted via the
        # companion matrix, an independent path from the Hermitian solver.
        h = nv_reduced_hamiltonian(NVParams(b_z=500.0))
        coeffs = char_poly_coefficients(h)
        roots = np.sort(np.real(np.roots(coeffs)))
        eig = hermitian_eig(h).eigenvalues
        scale = np.abs(eig).max()
        assert np.abs(roots - eig).max() <= 1e-8 * scale

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractViolation):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestMatrixExp:
    def test_zero_scale_is_identity(self):
        rng = np.random.default_rng(1)
        m = random_hermitian(rng, 4)
        assert np.abs(matrix_exp(m, 0.0) - np.eye(4)).max() <= 1e-14

    def test_pauli_rotation(self):
        out = matrix_exp(SIGMA_X, -1j * np.pi / 2)
        assert np.abs(out - (-1j) * SIGMA_X).max() <= 1e-12

    def test_against_taylor_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            m = random_hermitian(rng, 4)
            assert np.abs(matrix_exp(m, -0.3j) - taylor_expm(m, -0.3j)).max() <= 1e-9

    def test_unitary_for_hermitian_generator(self):
        rng = np.random.default_rng(13)
        m = random_hermitian(rng, 4)
        u = matrix_exp(m, -1j * 0.05)
        assert np.abs(u @ u.conj().T - np.eye(4)).max() <= 1e-10


class TestVnEntropy:
    def test_pure_state_zero(self):
        rng = np.random.default_rng(17)
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        assert vn_entropy(np.outer(v, v.conj())) <= 1e-12

    def test_maximally_mixed_qubit(self):
        assert abs(vn_entropy(ID2 / 2) - np.log(2)) <= 1e-12

    def test_maximally_mixed_two_qubits(self):
        rho = np.diag([0.25] * 4).astype(complex)
        assert abs(vn_entropy(rho) - np.log(4)) <= 1e-12
        assert abs(vn_entropy(rho, "two") - 2.0) <= 1e-12

    def test_unitary_invariance(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            rho = random_density_matrix(rng, 4)
            u = random_unitary(rng, 4)
            assert abs(vn_entropy(u @ rho @ u.conj().T) - vn_entropy(rho)) <= 1e-9

    def test_concavity(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            r1 = random_density_matrix(rng, 4)
            r2 = random_density_matrix(rng, 4)
            lam = rng.uniform(0.1, 0.9)
            mixed = lam * r1 + (1 - lam) * r2
            assert vn_entropy(mixed) >= lam * vn_entropy(r1) + (1 - lam) * vn_entropy(r2) - 1e-12

    def test_rejects_bad_trace(self):
        with pytest.raises(ContractViolation):
            vn_entropy(np.diag([0.7, 0.7]).astype(complex))

    def test_rejects_negative_eigenvalues(self):
        with pytest.raises(ContractViolation):
            vn_entropy(np.diag([1.1, -0.1]).astype(complex))

    def test_clips_integrator_roundoff(self):
        rho = np.diag([1.0 + 5e-10, -5e-10]).astype(complex)
        assert vn_entropy(rho) >= 0.0
