"""Hamiltonian builders for the driven electron-nuclear spin system.

Unit conventions, fixed once here and asserted by the test suite:

* Frequencies are in MHz, times in microseconds, magnetic field in Gauss.
* Constructed Hamiltonians are angular frequencies in rad/us; the 2*pi
  prefactors are applied at construction so parameter tables stay in MHz.
* A drive with Rabi frequency ``Omega`` flops the population of a resonant
  transition with period ``1/Omega`` (full return to the initial state).
  Equivalently, a resonant tone contributes ``pi*Omega`` on a Pauli-x type
  operator after the rotating-wave approximation.
* Basis ordering is ``|gg>, |ge>, |eg>, |ee>`` with the electron first;
  see :mod:`spinfreeze.operators`.

Two model families are provided: an abstract pair of driven two-level
spins coupled by an excited-state interaction, and the electron-nuclear
pair of a diamond defect center (zero-field splitting, hyperfine and
quadrupole couplings), in a full nine-level form and a reduced two-qubit
form. Drives exist in the lab frame (explicit sinusoidal carriers) and in
a doubly-rotating frame where resonant carriers become static terms.
"""

import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import dagger, kron
from .operators import (
    ID2,
    ID3,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    SPIN1_X,
    SPIN1_Y,
    SPIN1_Z,
)

TWO_PI = 2.0 * np.pi

# Excited-state projector |e><e| for a single two-level spin.
_EXC = np.diag([0.0, 1.0]).astype(complex)


@dataclass
class TwoSpinParams:
    """Abstract driven two-spin model: detunings, Rabi frequencies and the
    excited-excited interaction potential, all in MHz."""

    omega_1: float
    omega_2: float
    v0: float
    delta_1: float = 0.0
    delta_2: float = 0.0

    def __post_init__(self):
        vals = (self.omega_1, self.omega_2, self.v0, self.delta_1, self.delta_2)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("TwoSpinParams fields must be finite")
        if self.omega_1 < 0 or self.omega_2 < 0:
            raise ValueError("Rabi frequencies must be non-negative")


@dataclass
class NVParams:
    """Ground-manifold constants of the defect center.

    ``d`` zero-field splitting (MHz), ``ge_mub`` electron gyromagnetic
    factor (MHz/G), ``gn_mun`` nuclear gyromagnetic factor (kHz/G),
    ``a_par``/``a_perp`` hyperfine components (MHz), ``q`` quadrupole
    coupling (MHz), ``b_z`` axial magnetic field (G).
    """

    d: float = 2870.0
    ge_mub: float = 2.802
    gn_mun: float = 0.308
    a_par: float = -2.16
    a_perp: float = -2.70
    q: float = -4.962
    b_z: float = 500.0

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("zero-field splitting d must be positive")
        if self.b_z < 0:
            raise ValueError("b_z must be non-negative")

    @property
    def gn_mhz_per_g(self) -> float:
        """Nuclear gyromagnetic factor converted to MHz/G."""
        return self.gn_mun * 1e-3


@dataclass
class DriveSpec:
    """One sinusoidal drive tone.

    ``target`` is 'electron' or 'nuclear'; ``rabi`` is the resonant
    population-flopping frequency in MHz; ``carrier`` is the tone frequency
    in MHz (None selects the model's resonant default); ``phase`` is the
    carrier phase in radians.
    """

    target: str
    rabi: float
    carrier: float | None = None
    phase: float = 0.0

    def __post_init__(self):
        if self.target not in ("electron", "nuclear"):
            raise ValueError(f"unknown drive target {self.target!r}")
        if self.rabi < 0:
            raise ValueError("rabi must be non-negative")
        if self.carrier is not None and self.carrier < 0:
            raise ValueError("carrier must be non-negative")


def coupling_operator(target: str, dim: int) -> np.ndarray:
    """Drive coupling operator for the given target and model dimension.

    Dim 4 uses the full Pauli-x on the driven qubit so that a resonant
    tone of Rabi frequency Omega flops population at exactly Omega.
    Dim 9 uses the spin-1 x operators.
    """
    if dim == 4:
        ops = {"electron": kron(SIGMA_X, ID2), "nuclear": kron(ID2, SIGMA_X)}
    elif dim == 9:
        ops = {"electron": kron(SPIN1_X, ID3), "nuclear": kron(ID3, SPIN1_X)}
    else:
        raise ValueError(f"unsupported model dimension {dim}")
    try:
        return ops[target]
    except KeyError:
        raise ValueError(f"unknown drive target {target!r}") from None


def drive_term(d: DriveSpec, model_dim: int, t: float) -> np.ndarray:
    """Lab-frame drive matrix 2*pi*rabi*sin(2*pi*carrier*t + phase) * C."""
    if d.carrier is None:
        raise ValueError("drive_term requires a concrete carrier frequency")
    c = coupling_operator(d.target, model_dim)
    return TWO_PI * d.rabi * np.sin(TWO_PI * d.carrier * t + d.phase) * c


@dataclass
class SineDriveTerm:
    """Lab-frame sinusoidal drive: 2*pi*rabi*sin(2*pi*f*t + phase) * op."""

    spec: DriveSpec
    op: np.ndarray

    @property
    def is_static(self) -> bool:
        return False

    @property
    def carrier(self) -> float:
        return self.spec.carrier

    def matrix(self, t: float) -> np.ndarray:
        return (
            TWO_PI
            * self.spec.rabi
            * np.sin(TWO_PI * self.spec.carrier * t + self.spec.phase)
            * self.op
        )


@dataclass
class RotatingToneTerm:
    """Rotating-frame image of one or more tones on a single transition
    operator.

    Each lab tone ``2*pi*rabi*sin(theta) * (op_plus + op_plus^dag)`` keeps,
    after dropping counter-rotating terms, the contribution
    ``i*pi*rabi*exp(-i*(2*pi*detuning*t + phase)) * op_plus + h.c.``
    where ``detuning`` is the tone frequency minus the frame frequency.
    """

    op_plus: np.ndarray
    rabis: np.ndarray
    detunings: np.ndarray
    phases: np.ndarray
    target: str = ""

    def __post_init__(self):
        self.rabis = np.asarray(self.rabis, dtype=float)
        self.detunings = np.asarray(self.detunings, dtype=float)
        self.phases = np.asarray(self.phases, dtype=float)

    @property
    def is_static(self) -> bool:
        return bool(np.all(self.detunings == 0.0))

    @property
    def carrier(self) -> None:
        return None

    def matrix(self, t: float) -> np.ndarray:
        z = np.sum(
            np.pi * self.rabis * np.exp(-1j * (TWO_PI * self.detunings * t + self.phases))
        )
        m = 1j * z * self.op_plus
        return m + dagger(m)


@dataclass
class HamiltonianModel:
    """A static Hamiltonian plus a list of drive terms, evaluable at any t.

    All matrices are rad/us. ``frame`` is 'lab' or 'rotating'. ``warnings``
    collects validity flags raised at construction (the model still works).
    """

    static: np.ndarray
    drives: list = field(default_factory=list)
    frame: str = "rotating"
    dim: int = 4
    warnings: list = field(default_factory=list)

    def evaluate(self, t: float) -> np.ndarray:
        h = self.static
        if not self.drives:
            return h.copy()
        h = h.copy()
        for term in self.drives:
            h += term.matrix(t)
        return h

    @property
    def is_static(self) -> bool:
        return all(term.is_static for term in self.drives)

    @property
    def max_carrier(self) -> float | None:
        carriers = [term.carrier for term in self.drives if term.carrier is not None]
        return max(carriers) if carriers else None


def two_spin_hamiltonian(p: TwoSpinParams) -> HamiltonianModel:
    """Two driven two-level spins with excited-excited interaction.

    The drive terms are already in resonant rotating-wave form, so the
    model is static: detunings on the excited-state projectors, pi*Omega
    on each Pauli-x, and the interaction on the doubly-excited projector.
    """
    h = TWO_PI * (
        -p.delta_1 * kron(_EXC, ID2)
        - p.delta_2 * kron(ID2, _EXC)
        + 0.5 * p.omega_1 * kron(SIGMA_X, ID2)
        + 0.5 * p.omega_2 * kron(ID2, SIGMA_X)
        + p.v0 * kron(_EXC, _EXC)
    )
    return HamiltonianModel(static=h, drives=[], frame="rotating", dim=4)


def nv_ground_hamiltonian_full(p: NVParams) -> np.ndarray:
    """Nine-level static Hamiltonian of the coupled spin-1 pair (rad/us)."""
    gn = p.gn_mhz_per_g
    return TWO_PI * (
        p.d * kron(SPIN1_Z @ SPIN1_Z, ID3)
        + p.ge_mub * p.b_z * kron(SPIN1_Z, ID3)
        + p.a_perp * (kron(SPIN1_X, SPIN1_X) + kron(SPIN1_Y, SPIN1_Y))
        + p.a_par * kron(SPIN1_Z, SPIN1_Z)
        + p.q * kron(ID3, SPIN1_Z @ SPIN1_Z)
        - gn * p.b_z * kron(ID3, SPIN1_Z)
    )


def nv_reduced_hamiltonian(p: NVParams) -> np.ndarray:
    """Reduced two-qubit static Hamiltonian on the electron {|0>, |-1>} x
    nuclear {|+1>, |0>} subspace (rad/us).

    The nuclear Zeeman term enters the sigma_z coefficient with a minus
    sign so that all four diagonal gaps reproduce the nine-level diagonal
    restricted to this subspace.
    """
    a = p.a_par
    c_e = p.d - p.ge_mub * p.b_z - a / 2.0
    c_n = p.q - p.gn_mhz_per_g * p.b_z - a / 2.0
    return np.pi * (
        -c_e * kron(SIGMA_Z, ID2)
        + c_n * kron(ID2, SIGMA_Z)
        + (a / 2.0) * kron(SIGMA_Z, SIGMA_Z)
    )


def nv_transition_frequencies(p: NVParams) -> dict:
    """Transition frequencies (MHz) of the reduced model.

    Keys: 'electron_g'/'electron_e' for the electron flip with the nucleus
    in its ground/excited state, 'nuclear_g'/'nuclear_e' likewise for the
    nuclear flip, and 'mw_midway' for the carrier midway between the two
    electron transitions.
    """
    e = np.real(np.diag(nv_reduced_hamiltonian(p)))
    f = {
        "electron_g": (e[2] - e[0]) / TWO_PI,
        "electron_e": (e[3] - e[1]) / TWO_PI,
        "nuclear_g": (e[1] - e[0]) / TWO_PI,
        "nuclear_e": (e[3] - e[2]) / TWO_PI,
    }
    f["mw_midway"] = 0.5 * (f["electron_g"] + f["electron_e"])
    return f


def _resolve_carrier(spec: DriveSpec | None, default: float) -> float:
    if spec is None or spec.carrier is None:
        return default
    return spec.carrier


def _rwa_guard(spec: DriveSpec | None, gaps: tuple[float, float], label: str) -> list[str]:
    if spec is None or spec.rabi == 0:
        return []
    limit = 0.1 * min(abs(g) for g in gaps)
    if spec.rabi > limit:
        msg = (
            f"{label} Rabi frequency {spec.rabi} MHz exceeds 10% of the "
            f"smallest driven transition gap ({min(abs(g) for g in gaps):.4g} MHz); "
            "dropped counter-rotating terms may matter"
        )
        _warnings.warn(msg, stacklevel=3)
        return [msg]
    return []


def rotating_frame_model(
    p: NVParams,
    mw: DriveSpec | None = None,
    rf: DriveSpec | None = None,
    noise_tones: list[DriveSpec] = (),
) -> HamiltonianModel:
    """Reduced model in the doubly-rotating frame.

    The frame rotates at the MW carrier on the electron (default: midway
    between the two electron transitions) and at the RF carrier on the
    nucleus (default: resonant with the nuclear flip in the electron
    ground manifold). Carrier detunings land on the diagonal; each drive
    tone becomes a :class:`RotatingToneTerm`, static when resonant.
    """
    freqs = nv_transition_frequencies(p)
    f_mw = _resolve_carrier(mw, freqs["mw_midway"])
    f_rf = _resolve_carrier(rf, freqs["nuclear_g"])
    de = freqs["electron_g"] - f_mw
    dn = freqs["nuclear_g"] - f_rf
    a = p.a_par

    static = TWO_PI * np.diag([0.0, dn, de, de + dn + a]).astype(complex)
    op_e = kron(SIGMA_PLUS, ID2)
    op_n = kron(ID2, SIGMA_PLUS)

    model_warnings = []
    model_warnings += _rwa_guard(mw, (freqs["electron_g"], freqs["electron_e"]), "MW")
    model_warnings += _rwa_guard(rf, (freqs["nuclear_g"], freqs["nuclear_e"]), "RF")

    terms = []
    if mw is not None and mw.rabi > 0:
        terms.append(RotatingToneTerm(op_e, [mw.rabi], [0.0], [mw.phase], "electron"))
    if rf is not None and rf.rabi > 0:
        terms.append(RotatingToneTerm(op_n, [rf.rabi], [0.0], [rf.phase], "nuclear"))
    for target, op, f_frame in (("nuclear", op_n, f_rf), ("electron", op_e, f_mw)):
        tones = [s for s in noise_tones if s.target == target and s.rabi > 0]
        if tones:
            terms.append(
                RotatingToneTerm(
                    op,
                    [s.rabi for s in tones],
                    [s.carrier - f_frame for s in tones],
                    [s.phase for s in tones],
                    target,
                )
            )

    return HamiltonianModel(
        static=static, drives=terms, frame="rotating", dim=4, warnings=model_warnings
    )


def lab_frame_model(
    p: NVParams,
    mw: DriveSpec | None = None,
    rf: DriveSpec | None = None,
    noise_tones: list[DriveSpec] = (),
    dim: int = 4,
) -> HamiltonianModel:
    """Reduced (dim 4) or full nine-level (dim 9) model with explicit
    sinusoidal carriers. Unset carriers default to the same resonant
    choices as :func:`rotating_frame_model`."""
    if dim == 4:
        static = nv_reduced_hamiltonian(p).astype(complex)
    elif dim == 9:
        static = nv_ground_hamiltonian_full(p).astype(complex)
    else:
        raise ValueError(f"unsupported model dimension {dim}")

    freqs = nv_transition_frequencies(p)
    terms = []
    for spec, default in ((mw, freqs["mw_midway"]), (rf, freqs["nuclear_g"])):
        if spec is not None and spec.rabi > 0:
            resolved = DriveSpec(
                spec.target, spec.rabi, _resolve_carrier(spec, default), spec.phase
            )
            terms.append(SineDriveTerm(resolved, coupling_operator(spec.target, dim)))
    for spec in noise_tones:
        if spec.rabi > 0:
            resolved = DriveSpec(
                spec.target, spec.rabi, _resolve_carrier(spec, freqs["nuclear_g"]), spec.phase
            )
            terms.append(SineDriveTerm(resolved, coupling_operator(spec.target, dim)))

    return HamiltonianModel(static=static, drives=terms, frame="lab", dim=dim)
