"""Time evolution of the density matrix under the Lindblad master equation.

drho/dt = -i[H(t), rho] + sum_k ( L_k rho L_k^dag - {L_k^dag L_k, rho}/2 )

with H in rad/us and Lindblad operators in 1/sqrt(us). Three integration
methods are provided: a fixed-step classic Runge-Kutta (default), an
adaptive embedded Dormand-Prince pair, and a piecewise-constant matrix
exponential of the vectorized generator used as a cross-validation oracle.
Every accepted step is symmetrized, rho <- (rho + rho^dag)/2; positivity is
monitored at recorded steps and never projected.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .linalg import dagger, is_hermitian, kron, partial_trace
from .operators import BASIS_LABELS_4, BASIS_LABELS_9, ID2, ID3, SPIN1_Z

TRACE_TOL = 1e-9
POSITIVITY_TOL = -1e-6


class PropagationError(RuntimeError):
    """Integration failed; carries the offending simulation time (us)."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


@dataclass
class LindbladChannel:
    """One Lindblad collapse operator with a human-readable label."""

    operator: np.ndarray
    label: str = ""

    def __post_init__(self):
        self.operator = np.asarray(self.operator, dtype=complex)
        if not np.all(np.isfinite(self.operator)):
            raise ValueError("Lindblad operator must be finite")
        self._ldl = dagger(self.operator) @ self.operator

    @property
    def ldl(self) -> np.ndarray:
        """Cached L^dag L."""
        return self._ldl


def electron_dephasing_channel(t2_us: float, dim: int = 4) -> LindbladChannel:
    """Pure electron dephasing, L = sqrt(1/T2) * S_z.

    S_z is the electron spin-z operator embedded in the working dimension:
    the spin-1 operator for dim 9, its restriction diag(0, -1) to the
    {|0>, |-1>} subspace for dim 4.
    """
    if t2_us <= 0:
        raise ValueError("T2 must be positive")
    if dim == 4:
        sz = kron(np.diag([0.0, -1.0]).astype(complex), ID2)
    elif dim == 9:
        sz = kron(SPIN1_Z, ID3)
    else:
        raise ValueError(f"unsupported dimension {dim}")
    return LindbladChannel(np.sqrt(1.0 / t2_us) * sz, label=f"electron_dephasing_T2_{t2_us}us")


@dataclass
class SimulationGrid:
    """Time grid and method selection for one propagation.

    ``dt`` is nudged down so that an integer number of steps covers
    ``t_end`` and every ``record_stride``-th step (plus t=0) is recorded.
    """

    t_end: float
    dt: float
    record_stride: int = 1
    method: str = "rk4_fixed"
    store_states: bool = False
    rtol: float = 1e-8
    atol: float = 1e-10

    def __post_init__(self):
        if not (0 < self.dt <= self.t_end):
            raise ValueError("need 0 < dt <= t_end")
        if self.record_stride < 1:
            raise ValueError("record_stride must be a positive integer")
        if self.method not in ("rk4_fixed", "rk45_adaptive", "expm_piecewise_oracle"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class TimeSeries:
    """Recorded trajectory: populations, diagnostics and optional states."""

    times: np.ndarray
    populations: np.ndarray
    trace_err: np.ndarray
    min_eig: np.ndarray
    basis_labels: tuple
    states: np.ndarray | None = None
    discord_times: np.ndarray | None = None
    discord: np.ndarray | None = None

    @property
    def coherences(self) -> np.ndarray | None:
        """Per-time magnitudes of the upper-triangle entries (requires
        stored states); columns ordered (0,1), (0,2), ... row-major."""
        if self.states is None:
            return None
        d = self.states.shape[1]
        iu = np.triu_indices(d, k=1)
        return np.abs(self.states[:, iu[0], iu[1]])

    def nuclear_marginals(self) -> np.ndarray:
        """(n, 2) array of nuclear ground/excited populations (dim 4)."""
        if self.populations.shape[1] != 4:
            raise ValueError("nuclear marginals are defined for the two-qubit model")
        p = self.populations
        return np.column_stack([p[:, 0] + p[:, 2], p[:, 1] + p[:, 3]])


def populations(rho: np.ndarray) -> np.ndarray:
    """Real parts of the diagonal, in basis order."""
    return np.real(np.diag(rho)).copy()


def nuclear_marginal(rho: np.ndarray) -> tuple[float, float]:
    """(P_g, P_e) of the nuclear spin from the partial trace over the
    electron; 4x4 states only."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError("nuclear_marginal expects a 4x4 density matrix")
    marg = partial_trace(rho, keep="second")
    return float(np.real(marg[0, 0])), float(np.real(marg[1, 1]))


def lindblad_rhs(rho: np.ndarray, h_t: np.ndarray, channels: list) -> np.ndarray:
    """Right-hand side of the master equation at one instant."""
    if rho.shape != h_t.shape:
        raise ValueError(f"dimension mismatch: rho {rho.shape}, H {h_t.shape}")
    out = -1j * (h_t @ rho - rho @ h_t)
    for ch in channels:
        l = ch.operator
        out += l @ rho @ dagger(l) - 0.5 * (ch.ldl @ rho + rho @ ch.ldl)
    return out


def liouvillian_matrix(h: np.ndarray, channels: list) -> np.ndarray:
    """Vectorized generator acting on row-major flattened rho."""
    d = h.shape[0]
    ident = np.eye(d, dtype=complex)
    lv = -1j * (np.kron(h, ident) - np.kron(ident, h.T))
    for ch in channels:
        l = ch.operator
        lv += np.kron(l, l.conj())
        lv -= 0.5 * np.kron(ch.ldl, ident)
        lv -= 0.5 * np.kron(ident, ch.ldl.T)
    return lv


def _symmetrize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + dagger(rho))


def _basis_labels(dim: int) -> tuple:
    if dim == 4:
        return BASIS_LABELS_4
    if dim == 9:
        return BASIS_LABELS_9
    return tuple(str(i) for i in range(dim))


class _Recorder:
    """Accumulates recorded points and enforces the trajectory contracts."""

    def __init__(self, n_records: int, dim: int, store_states: bool):
        self.times = np.zeros(n_records)
        self.populations = np.zeros((n_records, dim))
        self.trace_err = np.zeros(n_records)
        self.min_eig = np.zeros(n_records)
        self.states = np.zeros((n_records, dim, dim), dtype=complex) if store_states else None
        self._k = 0

    def record(self, t: float, rho: np.ndarray):
        tr_err = abs(float(np.real(np.trace(rho))) - 1.0)
        if tr_err > TRACE_TOL:
            raise PropagationError(
                f"trace drifted by {tr_err:.3e} (> {TRACE_TOL}) at t = {t:.6g} us", t
            )
        w_min = float(np.linalg.eigvalsh(rho).min())
        if w_min < POSITIVITY_TOL:
            raise PropagationError(
                f"positivity violated: min eigenvalue {w_min:.3e} at t = {t:.6g} us", t
            )
        k = self._k
        self.times[k] = t
        self.populations[k] = np.real(np.diag(rho))
        self.trace_err[k] = tr_err
        self.min_eig[k] = w_min
        if self.states is not None:
            self.states[k] = rho
        self._k += 1


def propagate(
    rho0: np.ndarray,
    model,
    channels: list,
    grid: SimulationGrid,
) -> TimeSeries:
    """Propagate a density matrix and return the recorded trajectory.

    Deterministic: identical inputs give bit-identical output. Raises
    :class:`PropagationError` when the trace or positivity contracts fail.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    d = model.dim
    if rho0.shape != (d, d):
        raise ValueError(f"rho0 has shape {rho0.shape}, model dimension is {d}")
    if not is_hermitian(rho0, 1e-9):
        raise ValueError("rho0 must be Hermitian")
    if abs(float(np.real(np.trace(rho0))) - 1.0) > TRACE_TOL:
        raise ValueError("rho0 must have unit trace")
    if float(np.linalg.eigvalsh(_symmetrize(rho0)).min()) < -1e-9:
        raise ValueError("rho0 must be positive semidefinite")

    f_max = model.max_carrier
    if model.frame == "lab" and f_max:
        if grid.dt > 1.0 / (20.0 * f_max):
            raise ValueError(
                f"lab-frame dt = {grid.dt} exceeds 1/(20*f_max) = {1.0 / (20.0 * f_max):.3e}"
            )

    stride = grid.record_stride
    n_records = max(1, math.ceil(grid.t_end / (grid.dt * stride) - 1e-12))
    n_steps = n_records * stride
    dt = grid.t_end / n_steps

    rec = _Recorder(n_records + 1, d, grid.store_states)
    rho = _symmetrize(rho0)
    rec.record(0.0, rho)

    if grid.method == "rk4_fixed":
        _run_rk4(rho, model, channels, dt, n_steps, stride, rec)
    elif grid.method == "expm_piecewise_oracle":
        _run_expm(rho, model, channels, dt, n_steps, stride, rec)
    else:
        _run_rk45(rho, model, channels, dt, n_steps, stride, rec, grid.rtol, grid.atol)

    return TimeSeries(
        times=rec.times,
        populations=rec.populations,
        trace_err=rec.trace_err,
        min_eig=rec.min_eig,
        basis_labels=_basis_labels(d),
        states=rec.states,
    )


def _transpose_perm(d: int) -> np.ndarray:
    idx = np.arange(d * d).reshape(d, d)
    return idx.T.reshape(-1)


def _run_rk4(rho, model, channels, dt, n_steps, stride, rec):
    d = model.dim
    if model.is_static:
        # For a constant generator the classic Runge-Kutta update is the
        # fixed linear map sum_{k<=4} (dt*L)^k / k! on the flattened state.
        lv = liouvillian_matrix(model.evaluate(0.0), channels)
        a = lv * dt
        a2 = a @ a
        step = np.eye(d * d, dtype=complex) + a + a2 / 2.0 + (a2 @ a) / 6.0 + (a2 @ a2) / 24.0
        perm = _transpose_perm(d)
        v = rho.reshape(-1).copy()
        for i in range(1, n_steps + 1):
            v = step @ v
            v = 0.5 * (v + v[perm].conj())
            if i % stride == 0:
                rec.record(i * dt, v.reshape(d, d).copy())
        return

    for i in range(1, n_steps + 1):
        t = (i - 1) * dt
        k1 = lindblad_rhs(rho, model.evaluate(t), channels)
        h_mid = model.evaluate(t + 0.5 * dt)
        k2 = lindblad_rhs(rho + 0.5 * dt * k1, h_mid, channels)
        k3 = lindblad_rhs(rho + 0.5 * dt * k2, h_mid, channels)
        k4 = lindblad_rhs(rho + dt * k3, model.evaluate(t + dt), channels)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = _symmetrize(rho)
        if i % stride == 0:
            rec.record(i * dt, rho)


def _run_expm(rho, model, channels, dt, n_steps, stride, rec):
    d = model.dim
    perm = _transpose_perm(d)
    v = rho.reshape(-1).copy()
    static = model.is_static
    if static:
        u = scipy.linalg.expm(liouvillian_matrix(model.evaluate(0.0), channels) * dt)
    for i in range(1, n_steps + 1):
        if not static:
            t_mid = (i - 0.5) * dt
            u = scipy.linalg.expm(liouvillian_matrix(model.evaluate(t_mid), channels) * dt)
        v = u @ v
        v = 0.5 * (v + v[perm].conj())
        if i % stride == 0:
            rec.record(i * dt, v.reshape(d, d).copy())


# Dormand-Prince 5(4) tableau.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


def _run_rk45(rho, model, channels, dt_record, n_steps, stride, rec, rtol, atol):
    record_dt = dt_record * stride
    h = record_dt / 8.0
    t = 0.0
    for i in range(1, n_steps // stride + 1):
        t_target = i * record_dt
        while t < t_target - 1e-15 * t_target:
            h = min(h, t_target - t)
            k = []
            for s in range(7):
                y = rho
                for j, a in enumerate(_DP_A[s]):
                    if a != 0.0:
                        y = y + (h * a) * k[j]
                k.append(lindblad_rhs(y, model.evaluate(t + _DP_C[s] * h), channels))
            y5 = rho
            err = np.zeros_like(rho)
            for j in range(7):
                if _DP_B5[j] != 0.0:
                    y5 = y5 + (h * _DP_B5[j]) * k[j]
                db = _DP_B5[j] - _DP_B4[j]
                if db != 0.0:
                    err = err + (h * db) * k[j]
            scale = atol + rtol * max(1.0, float(np.abs(rho).max()))
            err_norm = float(np.abs(err).max()) / scale
            if err_norm <= 1.0:
                t = t + h
                rho = _symmetrize(y5)
            factor = 0.9 * (err_norm + 1e-16) ** -0.2
            h = h * min(5.0, max(0.2, factor))
        t = t_target
        rec.record(t, rho)
