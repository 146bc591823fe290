"""Quantum correlation metrics for the two-qubit state.

Mutual information I = S(rho_A) + S(rho_B) - S(rho); measured conditional
information Q = S(rho_B) - sum_k p_k S(rho_B|k) for a projective measurement
on one subsystem in the basis

    |u> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
    |v> = sin(theta)|0> - e^{i phi} cos(theta)|1>;

quantum discord D = I - max_{theta, phi} Q, maximized by a grid search over
theta in [0, pi/2], phi in [0, 2*pi) followed by Nelder-Mead refinement
around the grid argmax. Entropies default to natural log.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .dynamics import TimeSeries
from .linalg import kron, partial_trace, vn_entropy
from .operators import ID2

_LN2 = np.log(2.0)
_EIG_CUTOFF = 1e-12
_P_CUTOFF = 1e-12
# Propagated states may carry integrator round-off this deep in their spectra.
_STATE_ATOL = 1e-6


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit basis parameterized by (theta, phi)."""

    theta: float
    phi: float

    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        c, s = np.cos(self.theta), np.sin(self.theta)
        e = np.exp(1j * self.phi)
        u = np.array([c, e * s], dtype=complex)
        v = np.array([s, -e * c], dtype=complex)
        return u, v

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        u, v = self.vectors()
        return np.outer(u, u.conj()), np.outer(v, v.conj())


@dataclass
class DiscordResult:
    """Outcome of one discord evaluation; discord = mutual_info -
    classical_corr exactly, with classical_corr capped into [0, I]."""

    discord: float
    mutual_info: float
    classical_corr: float
    argmax_basis: MeasurementBasis
    grid_resolution: tuple[int, int]
    refined: bool


def _swap_subsystems(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


def mutual_information(rho: np.ndarray, log_base: str = "natural") -> float:
    """S(rho_A) + S(rho_B) - S(rho)."""
    rho = np.asarray(rho, dtype=complex)
    ra = partial_trace(rho, keep="first")
    rb = partial_trace(rho, keep="second")
    return (
        vn_entropy(ra, log_base, atol=_STATE_ATOL)
        + vn_entropy(rb, log_base, atol=_STATE_ATOL)
        - vn_entropy(rho, log_base, atol=_STATE_ATOL)
    )


def conditional_information(
    rho: np.ndarray,
    basis: MeasurementBasis,
    measured: str = "first",
    log_base: str = "natural",
) -> float:
    """S(rho_B) - sum_k p_k S(rho_B|k) for a projective measurement of the
    ``measured`` subsystem in ``basis``; outcomes with p_k below 1e-12
    contribute zero."""
    rho = np.asarray(rho, dtype=complex)
    if measured == "second":
        rho = _swap_subsystems(rho)
    elif measured != "first":
        raise ValueError(f"measured must be 'first' or 'second', got {measured!r}")

    s_b = vn_entropy(partial_trace(rho, keep="second"), log_base, atol=_STATE_ATOL)
    total = 0.0
    for proj in basis.projectors():
        big = kron(proj, ID2)
        post = big @ rho @ big
        p = float(np.real(np.trace(post)))
        if p < _P_CUTOFF:
            continue
        cond = partial_trace(post, keep="second") / p
        total += p * vn_entropy(cond, log_base, atol=_STATE_ATOL)
    return s_b - total


def _xlogx(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    mask = x > _EIG_CUTOFF
    out[mask] = x[mask] * np.log(x[mask])
    return out


def _entropy_2x2_batch(rho_batch: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(weighted entropies, weights) for a batch of unnormalized 2x2
    Hermitian blocks: returns p * S(block/p) with p = tr(block)."""
    a = np.real(rho_batch[..., 0, 0])
    d = np.real(rho_batch[..., 1, 1])
    off = rho_batch[..., 0, 1]
    half_gap = 0.5 * np.sqrt((a - d) ** 2 + 4.0 * np.abs(off) ** 2)
    mean = 0.5 * (a + d)
    lam1 = np.clip(mean + half_gap, 0.0, None)
    lam2 = np.clip(mean - half_gap, 0.0, None)
    p = a + d
    # p * S(block/p) = -sum lam*ln(lam) + p*ln(p)
    weighted = -_xlogx(lam1) - _xlogx(lam2) + _xlogx(p)
    return weighted, p


def _grid_conditional_information(
    rho: np.ndarray, thetas: np.ndarray, phis: np.ndarray
) -> np.ndarray:
    """Vectorized Q(theta, phi) in nats over the full grid, measurement on
    the first subsystem."""
    b00 = rho[0:2, 0:2]
    b01 = rho[0:2, 2:4]
    b10 = rho[2:4, 0:2]
    b11 = rho[2:4, 2:4]
    s_b = vn_entropy(b00 + b11, "natural", atol=_STATE_ATOL)

    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    th = th.reshape(-1)
    ph = ph.reshape(-1)
    c2 = np.cos(th) ** 2
    s2 = np.sin(th) ** 2
    cs_pos = np.cos(th) * np.sin(th) * np.exp(1j * ph)
    cs_neg = np.conj(cs_pos)

    # Unnormalized conditional block for outcome u is
    # c^2 b00 + cs e^{i phi} b01 + cs e^{-i phi} b10 + s^2 b11.
    cond_u = (
        np.einsum("n,ij->nij", c2, b00)
        + np.einsum("n,ij->nij", cs_pos, b01)
        + np.einsum("n,ij->nij", cs_neg, b10)
        + np.einsum("n,ij->nij", s2, b11)
    )
    cond_v = (
        np.einsum("n,ij->nij", s2, b00)
        - np.einsum("n,ij->nij", cs_pos, b01)
        - np.einsum("n,ij->nij", cs_neg, b10)
        + np.einsum("n,ij->nij", c2, b11)
    )
    w_u, _ = _entropy_2x2_batch(cond_u)
    w_v, _ = _entropy_2x2_batch(cond_v)
    return s_b - (w_u + w_v)


def quantum_discord(
    rho: np.ndarray,
    measured: str = "first",
    grid: tuple[int, int] = (64, 128),
    refine: bool = True,
    log_base: str = "natural",
) -> DiscordResult:
    """Discord via brute-force maximization of the conditional information.

    The grid covers theta in [0, pi/2] (endpoints included) and phi in
    [0, 2*pi) with at least 8 points per axis; with ``refine`` a
    Nelder-Mead pass polishes the grid argmax to 1e-8 in (theta, phi).
    """
    n_theta, n_phi = grid
    if n_theta < 8 or n_phi < 8:
        raise ValueError("grid must be at least 8x8")
    rho = np.asarray(rho, dtype=complex)
    rho_m = _swap_subsystems(rho) if measured == "second" else rho
    if measured not in ("first", "second"):
        raise ValueError(f"measured must be 'first' or 'second', got {measured!r}")

    mi_nats = mutual_information(rho, "natural")
    thetas = np.linspace(0.0, 0.5 * np.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    q = _grid_conditional_information(rho_m, thetas, phis)
    best = int(np.argmax(q))
    classical = float(q[best])
    theta0 = thetas[best // n_phi]
    phi0 = phis[best % n_phi]

    if refine:
        def neg_q(x):
            return -conditional_information(
                rho_m, MeasurementBasis(x[0], x[1]), "first", "natural"
            )

        res = minimize(
            neg_q,
            x0=[theta0, phi0],
            method="Nelder-Mead",
            options={"xatol": 1e-8, "fatol": 1e-12, "maxiter": 300},
        )
        if -res.fun > classical:
            classical = float(-res.fun)
            theta0, phi0 = float(res.x[0]), float(res.x[1])

    classical = min(max(classical, 0.0), mi_nats)
    discord = mi_nats - classical
    if log_base == "two":
        discord /= _LN2
        mi_nats /= _LN2
        classical /= _LN2
    elif log_base != "natural":
        raise ValueError(f"log_base must be 'natural' or 'two', got {log_base!r}")

    return DiscordResult(
        discord=discord,
        mutual_info=mi_nats,
        classical_corr=classical,
        argmax_basis=MeasurementBasis(theta0, phi0),
        grid_resolution=(n_theta, n_phi),
        refined=refine,
    )


def discord_trace(
    series: TimeSeries,
    measured: str = "first",
    grid: tuple[int, int] = (64, 128),
    refine: bool = True,
    log_base: str = "natural",
    stride_us: float = 0.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Discord along a recorded trajectory, every ``stride_us`` of
    simulated time; fills ``series.discord_times`` / ``series.discord``
    and returns them."""
    if series.states is None:
        raise ValueError("discord_trace needs stored density matrices (store_states=True)")
    times = series.times
    if len(times) > 1:
        record_dt = times[1] - times[0]
        step = max(1, int(round(stride_us / record_dt)))
    else:
        step = 1
    idx = np.arange(0, len(times), step)
    values = np.array(
        [
            quantum_discord(series.states[i], measured, grid, refine, log_base).discord
            for i in idx
        ]
    )
    series.discord_times = times[idx].copy()
    series.discord = values
    return series.discord_times, values
