import numpy as np
import pytest

from helpers import (
    bell_state,
    classically_correlated_state,
    random_density_matrix,
    random_unitary,
    werner_state,
)
from spinfreeze.discord import (
    MeasurementBasis,
    conditional_information,
    discord_trace,
    mutual_information,
    quantum_discord,
)
from spinfreeze.dynamics import SimulationGrid, propagate
from spinfreeze.hamiltonians import DriveSpec, NVParams, rotating_frame_model
from spinfreeze.linalg import kron, vn_entropy

LN2 = np.log(2.0)


def product_state(rng):
    ra = random_density_matrix(rng, 2)
    rb = random_density_matrix(rng, 2)
    return kron(ra, rb)


class TestMeasurementBasis:
    def test_orthonormal(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            b = MeasurementBasis(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
            u, v = b.vectors()
            assert abs(np.vdot(u, v)) <= 1e-15
            assert abs(np.vdot(u, u) - 1) <= 1e-15
        eu, ev = b.projectors()
        assert np.abs(eu + ev - np.eye(2)).max() <= 1e-15


class TestMutualInformation:
    def test_product_state_zero(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            assert abs(mutual_information(product_state(rng))) <= 1e-9

    def test_bell_state(self):
        assert abs(mutual_information(bell_state()) - 2 * LN2) <= 1e-12

    def test_classical_correlations(self):
        assert abs(mutual_information(classically_correlated_state()) - LN2) <= 1e-12


class TestConditionalInformation:
    def test_product_state_any_basis(self):
        rng = np.random.default_rng(7)
        rho = product_state(rng)
        for _ in range(5):
            b = MeasurementBasis(rng.uniform(0, np.pi / 2), rng.uniform(0, 2 * np.pi))
            assert abs(conditional_information(rho, b)) <= 1e-9

    def test_bell_state_pointer_basis(self):
        q = conditional_information(bell_state(), MeasurementBasis(0.0, 0.0))
        assert abs(q - LN2) <= 1e-12

    def test_classical_state_basis_dependence(self):
        rho = classically_correlated_state()
        q_pointer = conditional_information(rho, MeasurementBasis(0.0, 0.0))
        q_rotated = conditional_information(rho, MeasurementBasis(np.pi / 4, 0.0))
        assert abs(q_pointer - LN2) <= 1e-12
        assert abs(q_rotated) <= 1e-12

    def test_antipodal_parameterization_invariance(self):
        # (theta, phi) -> (pi/2 - theta, phi + pi) swaps |u> and |v>,
        # describing the same projector pair.
        rng = np.random.default_rng(11)
        for _ in range(10):
            rho = random_density_matrix(rng, 4)
            th, ph = rng.uniform(0, np.pi / 2), rng.uniform(0, np.pi)
            q1 = conditional_information(rho, MeasurementBasis(th, ph))
            q2 = conditional_information(rho, MeasurementBasis(np.pi / 2 - th, ph + np.pi))
            assert abs(q1 - q2) <= 1e-12

    def test_measured_second(self):
        rho = classically_correlated_state()
        q = conditional_information(rho, MeasurementBasis(0.0, 0.0), measured="second")
        assert abs(q - LN2) <= 1e-12


class TestQuantumDiscord:
    def test_product_states_zero(self):
        rng = np.random.default_rng(13)
        for _ in range(5):
            res = quantum_discord(product_state(rng))
            assert abs(res.discord) <= 1e-6

    def test_bell_state(self):
        res = quantum_discord(bell_state())
        assert abs(res.discord - LN2) <= 1e-3
        assert abs(res.mutual_info - 2 * LN2) <= 1e-9
        res_bits = quantum_discord(bell_state(), log_base="two")
        assert abs(res_bits.discord - 1.0) <= 2e-3

    def test_werner_against_fine_grid_golden(self, goldens):
        res = quantum_discord(werner_state(0.5))
        assert abs(res.discord - goldens["werner_p05_discord_nats"]) <= 1e-4

    def test_result_invariants(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            rho = random_density_matrix(rng, 4)
            res = quantum_discord(rho)
            assert abs(res.discord - (res.mutual_info - res.classical_corr)) <= 1e-12
            assert -1e-12 <= res.classical_corr <= res.mutual_info + 1e-9
            assert res.discord >= 0.0
            s_measured = vn_entropy(np.trace(rho.reshape(2, 2, 2, 2), axis1=1, axis2=3))
            assert res.discord <= s_measured + 1e-6

    def test_grid_doubling_stability(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            rho = random_density_matrix(rng, 4)
            c1 = quantum_discord(rho, grid=(16, 32)).classical_corr
            c2 = quantum_discord(rho, grid=(32, 64)).classical_corr
            assert abs(c1 - c2) <= 1e-3

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            rho = random_density_matrix(rng, 4)
            u = kron(random_unitary(rng, 2), random_unitary(rng, 2))
            d1 = quantum_discord(rho).discord
            d2 = quantum_discord(u @ rho @ u.conj().T).discord
            assert abs(d1 - d2) <= 1e-3

    def test_measured_second_on_symmetric_state(self):
        res1 = quantum_discord(werner_state(0.5), measured="first")
        res2 = quantum_discord(werner_state(0.5), measured="second")
        assert abs(res1.discord - res2.discord) <= 1e-6

    def test_grid_must_be_at_least_8(self):
        with pytest.raises(ValueError):
            quantum_discord(bell_state(), grid=(4, 16))


class TestDiscordTrace:
    def test_product_initial_state_starts_at_zero(self):
        model = rotating_frame_model(NVParams(), DriveSpec("electron", 4.0), DriveSpec("nuclear", 0.04))
        v = 0.5 * np.array([1, 1, 1, 1], dtype=complex)
        rho0 = np.outer(v, v.conj())
        ts = propagate(rho0, model, [], SimulationGrid(2.0, 1e-3, 100, store_states=True))
        times, values = discord_trace(ts, stride_us=0.5)
        assert values[0] <= 1e-6
        assert ts.discord is not None
        assert len(times) == len(values)
        # stride honored: 0.5 us between evaluations on a 0.1 us record grid
        assert abs((times[1] - times[0]) - 0.5) <= 1e-9

    def test_requires_stored_states(self):
        model = rotating_frame_model(NVParams(), DriveSpec("electron", 4.0), None)
        rho0 = np.zeros((4, 4), dtype=complex)
        rho0[0, 0] = 1.0
        ts = propagate(rho0, model, [], SimulationGrid(1.0, 1e-3, 100))
        with pytest.raises(ValueError):
            discord_trace(ts)
