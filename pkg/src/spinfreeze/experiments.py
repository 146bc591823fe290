"""Declarative scenario definitions and the runner that composes them.

Each preset reproduces one parameter regime of the driven two-spin /
electron-nuclear system:

==============  ==============================================================
fig2a           two spins, equal resonant drives (2 MHz each), no interaction
fig2b           equal drives (2 MHz), interaction 2 MHz
fig2c           biased drives (2 MHz vs 100 kHz), no interaction
fig2d           biased drives + interaction 2 MHz: second spin freezes
fig3a           electron-nuclear pair, MW = RF = 4 MHz
fig3b_caption   MW 4 MHz, RF 40 kHz: nuclear spin frozen
fig3b_text      MW 4 MHz, RF 100 kHz variant
fig3c           long-time run of the fig3b_caption parameters
fig4a           resonant 40 kHz RF noise tone, no MW
fig4b           resonant noise tone + decoupling MW (4 MHz)
fig4c           nuclear superposition + resonant noise tone, no MW
fig4d           nuclear superposition + noise tone + decoupling MW
fig5a           Gaussian-profile noise (30 kHz peak, 10 kHz width) + MW
fig5b           Gaussian-profile noise (30 kHz peak, 100 kHz width) + MW
fig5c           uniform-band noise (10 kHz over +/- 0.5 MHz) + MW
fig5d           uniform-band noise (20 kHz over +/- 0.5 MHz) + MW
fig6a           full superposition + resonant noise tone, discord trace
fig6b           fig6a + decoupling MW: discord stays near zero
==============  ==============================================================

The two-spin presets run closed-system; all electron-nuclear presets carry
the 150 us electron dephasing channel and default to the rotating frame.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from . import discord as discord_mod
from .dynamics import (
    PropagationError,
    SimulationGrid,
    TimeSeries,
    electron_dephasing_channel,
    propagate,
)
from .hamiltonians import (
    DriveSpec,
    HamiltonianModel,
    NVParams,
    TwoSpinParams,
    lab_frame_model,
    nv_transition_frequencies,
    rotating_frame_model,
    two_spin_hamiltonian,
)
from .noise import NoiseModel, gaussian_noise, noise_drive_terms, single_tone_noise, uniform_band_noise
from .operators import basis_ket

T2_DEFAULT_US = 150.0


class ScenarioError(RuntimeError):
    """A scenario failed to build or propagate."""


@dataclass
class NoiseSpec:
    """Declarative noise description; frequency fields left as None resolve
    to the model's resonant nuclear transition (band edges to +/- 0.5 MHz
    around it)."""

    profile: str
    rabi: float | None = None
    frequency: float | None = None
    a0: float | None = None
    sigma: float | None = None
    center: float | None = None
    k: float | None = None
    f_lo: float | None = None
    f_hi: float | None = None
    n_tones: int = 101
    normalize: bool = True


@dataclass
class ScenarioConfig:
    """Everything needed to reproduce one simulation run."""

    name: str
    model: str
    params: TwoSpinParams | NVParams = field(default_factory=NVParams)
    initial_state: str = "gg"
    frame: str = "rotating"
    t_end: float = 10.0
    dt: float | None = None
    record_stride: int | None = None
    method: str = "rk4_fixed"
    seed: int = 0
    t2: float | None = None
    mw_rabi: float = 0.0
    mw_carrier: float | None = None
    rf_rabi: float = 0.0
    rf_carrier: float | None = None
    noise: NoiseSpec | None = None
    outputs: tuple = ("populations",)
    discord_stride: float = 0.5
    discord_measured: str = "first"
    discord_grid: tuple = (64, 128)


@dataclass
class FreezingMetrics:
    """Freezing quality over the full simulated window.

    ``max_leakage`` is max_t (P_ge + P_ee) for ground-initialized runs, or
    max_t |P_g^N(t) - P_g^N(0)| for superposition-initialized runs.
    """

    max_leakage: float
    mean_leakage: float
    time_window: float
    mode: str


def _nv_preset(name, *, initial="gg", t_end, mw=0.0, rf=0.0, noise=None, outputs=("populations",)):
    return ScenarioConfig(
        name=name,
        model="nv_reduced",
        params=NVParams(),
        initial_state=initial,
        t_end=t_end,
        t2=T2_DEFAULT_US,
        mw_rabi=mw,
        rf_rabi=rf,
        noise=noise,
        outputs=outputs,
    )


def _two_spin_preset(name, omega_1, omega_2, v0):
    return ScenarioConfig(
        name=name,
        model="two_spin",
        params=TwoSpinParams(omega_1=omega_1, omega_2=omega_2, v0=v0),
        t_end=10.0,
    )


_SINGLE_TONE_40KHZ = lambda: NoiseSpec(profile="single_tone", rabi=0.04)

_PRESET_BUILDERS = {
    "fig2a": lambda: _two_spin_preset("fig2a", 2.0, 2.0, 0.0),
    "fig2b": lambda: _two_spin_preset("fig2b", 2.0, 2.0, 2.0),
    "fig2c": lambda: _two_spin_preset("fig2c", 2.0, 0.1, 0.0),
    "fig2d": lambda: _two_spin_preset("fig2d", 2.0, 0.1, 2.0),
    "fig3a": lambda: _nv_preset("fig3a", t_end=10.0, mw=4.0, rf=4.0),
    "fig3b_caption": lambda: _nv_preset("fig3b_caption", t_end=10.0, mw=4.0, rf=0.04),
    "fig3b_text": lambda: _nv_preset("fig3b_text", t_end=10.0, mw=4.0, rf=0.1),
    "fig3c": lambda: _nv_preset("fig3c", t_end=150.0, mw=4.0, rf=0.04),
    "fig4a": lambda: _nv_preset("fig4a", t_end=150.0, noise=_SINGLE_TONE_40KHZ()),
    "fig4b": lambda: _nv_preset("fig4b", t_end=150.0, mw=4.0, noise=_SINGLE_TONE_40KHZ()),
    "fig4c": lambda: _nv_preset(
        "fig4c", initial="nuclear_plus", t_end=150.0, noise=_SINGLE_TONE_40KHZ(),
        outputs=("populations", "nuclear_marginal"),
    ),
    "fig4d": lambda: _nv_preset(
        "fig4d", initial="nuclear_plus", t_end=150.0, mw=4.0, noise=_SINGLE_TONE_40KHZ(),
        outputs=("populations", "nuclear_marginal"),
    ),
    "fig5a": lambda: _nv_preset(
        "fig5a", t_end=150.0, mw=4.0, noise=NoiseSpec(profile="gaussian", a0=0.03, sigma=0.01),
    ),
    "fig5b": lambda: _nv_preset(
        "fig5b", t_end=150.0, mw=4.0, noise=NoiseSpec(profile="gaussian", a0=0.03, sigma=0.1),
    ),
    "fig5c": lambda: _nv_preset(
        "fig5c", t_end=150.0, mw=4.0, noise=NoiseSpec(profile="uniform_band", k=0.01),
    ),
    "fig5d": lambda: _nv_preset(
        "fig5d", t_end=150.0, mw=4.0, noise=NoiseSpec(profile="uniform_band", k=0.02),
    ),
    "fig6a": lambda: _nv_preset(
        "fig6a", initial="plus_plus", t_end=150.0, noise=_SINGLE_TONE_40KHZ(),
        outputs=("populations", "discord"),
    ),
    "fig6b": lambda: _nv_preset(
        "fig6b", initial="plus_plus", t_end=150.0, mw=4.0, noise=_SINGLE_TONE_40KHZ(),
        outputs=("populations", "discord"),
    ),
}

PRESET_DESCRIPTIONS = {
    "fig2a": "two spins, Omega1 = Omega2 = 2 MHz, V0 = 0",
    "fig2b": "two spins, Omega1 = Omega2 = 2 MHz, V0 = 2 MHz",
    "fig2c": "two spins, Omega1 = 2 MHz, Omega2 = 100 kHz, V0 = 0",
    "fig2d": "two spins, Omega1 = 2 MHz, Omega2 = 100 kHz, V0 = 2 MHz (freezing)",
    "fig3a": "electron-nuclear pair, MW = RF = 4 MHz",
    "fig3b_caption": "electron-nuclear pair, MW 4 MHz, RF 40 kHz (frozen)",
    "fig3b_text": "electron-nuclear pair, MW 4 MHz, RF 100 kHz (frozen)",
    "fig3c": "long-time run of the fig3b_caption parameters",
    "fig4a": "resonant 40 kHz noise tone, no MW",
    "fig4b": "resonant 40 kHz noise tone + 4 MHz decoupling MW",
    "fig4c": "nuclear superposition + resonant noise tone, no MW",
    "fig4d": "nuclear superposition + noise tone + decoupling MW",
    "fig5a": "Gaussian noise, peak 30 kHz, width 10 kHz, + MW",
    "fig5b": "Gaussian noise, peak 30 kHz, width 100 kHz, + MW",
    "fig5c": "uniform-band noise, 10 kHz over +/- 0.5 MHz, + MW",
    "fig5d": "uniform-band noise, 20 kHz over +/- 0.5 MHz, + MW",
    "fig6a": "full superposition + resonant noise tone, discord trace",
    "fig6b": "fig6a + 4 MHz decoupling MW, discord trace",
}

PRESET_NAMES = tuple(sorted(_PRESET_BUILDERS))


def preset(name: str) -> ScenarioConfig:
    """A fresh ScenarioConfig for one named preset."""
    try:
        builder = _PRESET_BUILDERS[name]
    except KeyError:
        raise ScenarioError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESET_NAMES)}"
        ) from None
    return builder()


def initial_density(label: str, dim: int = 4) -> np.ndarray:
    """Density matrix for an initial-state label.

    Labels: a basis label ('gg', 'ge', 'eg', 'ee'), 'nuclear_plus' for
    electron ground times (|g> + |e>)/sqrt(2) on the nucleus, 'plus_plus'
    for the equal superposition of all four basis states, or
    'amps:a,b,c,d' giving four complex amplitudes (normalized to 1e-6).
    """
    if label in ("gg", "ge", "eg", "ee"):
        ket = basis_ket(label, dim)
    elif label == "nuclear_plus":
        ket = (basis_ket("gg", dim) + basis_ket("ge", dim)) / np.sqrt(2.0)
    elif label == "plus_plus":
        ket = 0.5 * (
            basis_ket("gg", dim) + basis_ket("ge", dim) + basis_ket("eg", dim) + basis_ket("ee", dim)
        )
    elif label.startswith("amps:"):
        if dim != 4:
            raise ScenarioError("amplitude initial states are supported for dim 4 only")
        amps = [complex(x) for x in label[len("amps:"):].split(",")]
        if len(amps) != 4:
            raise ScenarioError("amps: initial state needs exactly four amplitudes")
        ket = np.array(amps, dtype=complex)
        norm = float(np.linalg.norm(ket))
        if abs(norm - 1.0) > 1e-6:
            raise ScenarioError(f"initial amplitudes have norm {norm}, expected 1")
        ket = ket / norm
    else:
        raise ScenarioError(f"unknown initial state {label!r}")
    return np.outer(ket, ket.conj())


def build_noise_model(spec: NoiseSpec, f_resonant: float, seed: int) -> NoiseModel:
    """Instantiate a NoiseSpec against the model's resonant frequency."""
    if spec.profile == "single_tone":
        f = spec.frequency if spec.frequency is not None else f_resonant
        return single_tone_noise(rabi=spec.rabi, frequency=f, seed=seed)
    if spec.profile == "gaussian":
        center = spec.center if spec.center is not None else f_resonant
        return gaussian_noise(
            a0=spec.a0, sigma=spec.sigma, center=center,
            n_tones=spec.n_tones, seed=seed, normalize=spec.normalize,
        )
    if spec.profile == "uniform_band":
        f_lo = spec.f_lo if spec.f_lo is not None else f_resonant - 0.5
        f_hi = spec.f_hi if spec.f_hi is not None else f_resonant + 0.5
        return uniform_band_noise(
            k=spec.k, f_lo=f_lo, f_hi=f_hi,
            n_tones=spec.n_tones, seed=seed, normalize=spec.normalize,
        )
    raise ScenarioError(f"unknown noise profile {spec.profile!r}")


def build_model(cfg: ScenarioConfig) -> HamiltonianModel:
    """HamiltonianModel for a scenario configuration."""
    if cfg.model == "two_spin":
        if not isinstance(cfg.params, TwoSpinParams):
            raise ScenarioError("two_spin model needs TwoSpinParams")
        return two_spin_hamiltonian(cfg.params)

    if cfg.model not in ("nv_reduced", "nv_full"):
        raise ScenarioError(f"unknown model {cfg.model!r}")
    if not isinstance(cfg.params, NVParams):
        raise ScenarioError(f"{cfg.model} model needs NVParams")

    p = cfg.params
    mw = DriveSpec("electron", cfg.mw_rabi, cfg.mw_carrier) if cfg.mw_rabi > 0 else None
    rf = DriveSpec("nuclear", cfg.rf_rabi, cfg.rf_carrier) if cfg.rf_rabi > 0 else None
    tones = []
    if cfg.noise is not None:
        f_res = nv_transition_frequencies(p)["nuclear_g"]
        tones = noise_drive_terms(build_noise_model(cfg.noise, f_res, cfg.seed), "nuclear")

    if cfg.model == "nv_full":
        if cfg.frame != "lab":
            raise ScenarioError("the nine-level model is propagated in the lab frame only")
        return lab_frame_model(p, mw, rf, tones, dim=9)
    if cfg.frame == "rotating":
        return rotating_frame_model(p, mw, rf, tones)
    if cfg.frame == "lab":
        return lab_frame_model(p, mw, rf, tones, dim=4)
    raise ScenarioError(f"unknown frame {cfg.frame!r}")


def _auto_grid(cfg: ScenarioConfig, model: HamiltonianModel) -> SimulationGrid:
    if cfg.dt is not None:
        dt = cfg.dt
    elif model.frame == "lab" and model.max_carrier:
        dt = 1.0 / (40.0 * model.max_carrier)
    else:
        dt = 1e-3
    if cfg.record_stride is not None:
        stride = cfg.record_stride
    else:
        n_steps = cfg.t_end / dt
        stride = max(1, int(round(n_steps / 1500.0)))
    return SimulationGrid(
        t_end=cfg.t_end,
        dt=dt,
        record_stride=stride,
        method=cfg.method,
        store_states="discord" in cfg.outputs,
    )


def run_scenario(cfg: ScenarioConfig) -> tuple[TimeSeries, FreezingMetrics | None]:
    """Run one scenario; deterministic given (cfg, seed)."""
    model = build_model(cfg)
    rho0 = initial_density(cfg.initial_state, model.dim)
    channels = []
    if cfg.t2 is not None:
        channels.append(electron_dephasing_channel(cfg.t2, model.dim))
    grid = _auto_grid(cfg, model)

    try:
        series = propagate(rho0, model, channels, grid)
    except PropagationError as exc:
        raise ScenarioError(
            f"scenario {cfg.name!r} failed at t = {exc.time:.6g} us: {exc}"
        ) from exc

    if "discord" in cfg.outputs:
        discord_mod.discord_trace(
            series,
            measured=cfg.discord_measured,
            grid=cfg.discord_grid,
            stride_us=cfg.discord_stride,
        )

    metrics = None
    if model.dim == 4:
        mode = "superposition" if cfg.initial_state in ("nuclear_plus", "plus_plus") else "ground"
        metrics = freezing_metrics(series, mode)
    return series, metrics


def freezing_metrics(series: TimeSeries, mode: str = "ground") -> FreezingMetrics:
    """Freezing quality of a recorded trajectory.

    'ground' mode tracks the total population outside the nuclear ground
    manifold; 'superposition' mode tracks the drift of the nuclear ground
    population away from its initial value.
    """
    if series.populations.shape[1] != 4:
        raise ValueError("freezing metrics are defined for the two-qubit model")
    if mode == "ground":
        leak = series.populations[:, 1] + series.populations[:, 3]
    elif mode == "superposition":
        marg = series.nuclear_marginals()
        leak = np.abs(marg[:, 0] - marg[0, 0])
    else:
        raise ValueError(f"unknown freezing mode {mode!r}")
    return FreezingMetrics(
        max_leakage=float(leak.max()),
        mean_leakage=float(leak.mean()),
        time_window=float(series.times[-1]),
        mode=mode,
    )


def with_overrides(cfg: ScenarioConfig, **kwargs) -> ScenarioConfig:
    """Copy of a config with fields replaced."""
    return replace(cfg, **kwargs)
