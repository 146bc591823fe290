"""Seeded multitone synthesis of broadband RF noise fields.

A noise field is realized as a deterministic comb of sinusoidal tones with
random phases: tone frequencies sit on a fixed grid over the profile's
support, per-tone amplitudes follow the requested spectral profile, and
phases are drawn independently and uniformly from [0, 2*pi) with the
SplitMix64 generator below. Identical (profile, parameters, tone count,
seed) always reproduce the same tone list, bit for bit.

Amplitude normalization: by default the per-tone Rabi amplitude is the
profile value at the tone frequency divided by sqrt(n_tones), so the total
noise power is independent of the grid size; pass ``normalize=False`` for
raw per-tone amplitudes.
"""

from dataclasses import dataclass, field

import numpy as np

from .hamiltonians import DriveSpec

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Minimal 64-bit generator, fixed here by its recurrence so phase
    sequences are reproducible independent of any library version:

        state   <- (state + 0x9E3779B97F4A7C15) mod 2^64
        x       <- state
        x       <- (x XOR (x >> 30)) * 0xBF58476D1CE4E5B9  mod 2^64
        x       <- (x XOR (x >> 27)) * 0x94D049BB133111EB  mod 2^64
        output  <- x XOR (x >> 31)

    ``uniform`` maps the 64-bit output to [0, 1) as output / 2^64.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        x = self.state
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (x ^ (x >> 31)) & _MASK64

    def uniform(self) -> float:
        return self.next_uint64() / 2.0**64


def _random_phases(n: int, seed: int) -> np.ndarray:
    gen = SplitMix64(seed)
    return np.array([2.0 * np.pi * gen.uniform() for _ in range(n)])


@dataclass(frozen=True)
class NoiseTone:
    """One noise tone: per-tone Rabi amplitude (MHz), frequency (MHz) and
    phase (radians, in [0, 2*pi))."""

    rabi: float
    frequency: float
    phase: float

    def __post_init__(self):
        if self.rabi < 0:
            raise ValueError("tone amplitude must be non-negative")
        if self.frequency <= 0:
            raise ValueError("tone frequency must be positive")
        if not (0.0 <= self.phase < 2.0 * np.pi):
            raise ValueError("tone phase must lie in [0, 2*pi)")


@dataclass
class NoiseModel:
    """A reproducible set of tones realizing one spectral profile."""

    tones: list
    seed: int
    profile: str
    params: dict = field(default_factory=dict)


def single_tone_noise(rabi: float, frequency: float, phase: float = 0.0, seed: int = 0) -> NoiseModel:
    """A single deterministic tone (the resonant noise-field case)."""
    tone = NoiseTone(rabi=rabi, frequency=frequency, phase=phase % (2.0 * np.pi))
    return NoiseModel(
        tones=[tone],
        seed=seed,
        profile="single_tone",
        params={"rabi": rabi, "frequency": frequency, "phase": phase},
    )


def gaussian_noise(
    a0: float,
    sigma: float,
    center: float,
    n_tones: int = 101,
    seed: int = 0,
    normalize: bool = True,
) -> NoiseModel:
    """Tones on an equally spaced grid spanning center +/- 4*sigma with
    amplitudes a0 * exp(-(f - center)^2 / (2*sigma^2)).

    The +/- 4*sigma truncation leaves under 1e-4 relative tail mass.
    """
    if a0 <= 0 or sigma <= 0:
        raise ValueError("a0 and sigma must be positive")
    if n_tones < 1:
        raise ValueError("n_tones must be at least 1")
    if n_tones == 1:
        freqs = np.array([center])
    else:
        freqs = np.linspace(center - 4.0 * sigma, center + 4.0 * sigma, n_tones)
    amps = a0 * np.exp(-((freqs - center) ** 2) / (2.0 * sigma**2))
    if normalize:
        amps = amps / np.sqrt(n_tones)
    phases = _random_phases(n_tones, seed)
    tones = [NoiseTone(a, f, p) for a, f, p in zip(amps, freqs, phases)]
    return NoiseModel(
        tones=tones,
        seed=seed,
        profile="gaussian",
        params={"a0": a0, "sigma": sigma, "center": center, "n_tones": n_tones, "normalize": normalize},
    )


def uniform_band_noise(
    k: float,
    f_lo: float,
    f_hi: float,
    n_tones: int = 101,
    seed: int = 0,
    normalize: bool = True,
) -> NoiseModel:
    """Equal-amplitude tones equally spaced over [f_lo, f_hi]."""
    if f_lo >= f_hi:
        raise ValueError("need f_lo < f_hi")
    if k < 0:
        raise ValueError("k must be non-negative")
    if n_tones < 1:
        raise ValueError("n_tones must be at least 1")
    if n_tones == 1:
        freqs = np.array([0.5 * (f_lo + f_hi)])
    else:
        freqs = np.linspace(f_lo, f_hi, n_tones)
    amp = k / np.sqrt(n_tones) if normalize else k
    phases = _random_phases(n_tones, seed)
    tones = [NoiseTone(amp, f, p) for f, p in zip(freqs, phases)]
    return NoiseModel(
        tones=tones,
        seed=seed,
        profile="uniform_band",
        params={"k": k, "f_lo": f_lo, "f_hi": f_hi, "n_tones": n_tones, "normalize": normalize},
    )


def noise_drive_terms(model: NoiseModel, target: str = "nuclear") -> list:
    """One DriveSpec per tone, order preserved."""
    if target not in ("nuclear", "electron"):
        raise ValueError(f"unknown noise target {target!r}")
    return [
        DriveSpec(target=target, rabi=t.rabi, carrier=t.frequency, phase=t.phase)
        for t in model.tones
    ]
