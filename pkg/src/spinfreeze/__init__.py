"""spinfreeze: driven electron-nuclear spin dynamics and freezing scenarios.

A small simulation library plus CLI for a hyperfine-coupled electron and
nuclear spin under simultaneous microwave and RF driving: Hamiltonian
construction in the lab and rotating frames, Lindblad propagation with
electron dephasing, seeded broadband noise synthesis, quantum discord, and
reproducible scenario presets with CSV/SVG reports.
"""

__version__ = "0.1.0"

from .discord import (
    DiscordResult,
    MeasurementBasis,
    conditional_information,
    discord_trace,
    mutual_information,
    quantum_discord,
)
from .dynamics import (
    LindbladChannel,
    PropagationError,
    SimulationGrid,
    TimeSeries,
    electron_dephasing_channel,
    lindblad_rhs,
    nuclear_marginal,
    populations,
    propagate,
)
from .experiments import (
    FreezingMetrics,
    NoiseSpec,
    PRESET_NAMES,
    ScenarioConfig,
    ScenarioError,
    freezing_metrics,
    preset,
    run_scenario,
)
from .hamiltonians import (
    DriveSpec,
    HamiltonianModel,
    NVParams,
    TwoSpinParams,
    drive_term,
    lab_frame_model,
    nv_ground_hamiltonian_full,
    nv_reduced_hamiltonian,
    nv_transition_frequencies,
    rotating_frame_model,
    two_spin_hamiltonian,
)
from .linalg import (
    ContractViolation,
    Spectrum,
    hermitian_eig,
    kron,
    matrix_exp,
    partial_trace,
    vn_entropy,
)
from .noise import (
    NoiseModel,
    NoiseTone,
    gaussian_noise,
    noise_drive_terms,
    single_tone_noise,
    uniform_band_noise,
)
