"""Flat ``key = value`` scenario configuration files.

The format is line-oriented: one ``key = value`` pair per line, ``#``
starts a comment, blank lines are ignored. Dotted keys group related
fields. All keys and their types:

    name                    str     scenario name (used for output files)
    model                   str     two_spin | nv_reduced | nv_full
    initial_state           str     gg | ge | eg | ee | nuclear_plus |
                                    plus_plus | amps:a,b,c,d
    frame                   str     rotating | lab
    t_end                   float   simulated window (us)
    dt                      float   integrator step (us); omit for auto
    record_stride           int     record every k-th step; omit for auto
    method                  str     rk4_fixed | rk45_adaptive |
                                    expm_piecewise_oracle
    seed                    int     noise-phase seed
    t2                      float   electron dephasing time (us); omit for
                                    closed-system evolution
    two_spin.omega_1        float   } abstract-model parameters (MHz),
    two_spin.omega_2        float   } required when model = two_spin
    two_spin.v0             float   }
    two_spin.delta_1        float   optional detunings (default 0)
    two_spin.delta_2        float
    nv.d nv.ge_mub nv.gn_mun nv.a_par nv.a_perp nv.q nv.b_z
                            float   electron-nuclear constants (defaults
                                    built in; see hamiltonians.NVParams)
    drive.mw.rabi           float   MW Rabi frequency (MHz), 0 = off
    drive.mw.carrier        float   MW carrier (MHz); omit for midway
    drive.rf.rabi           float   RF Rabi frequency (MHz), 0 = off
    drive.rf.carrier        float   RF carrier (MHz); omit for resonant
    noise.profile           str     single_tone | gaussian | uniform_band
    noise.rabi noise.frequency noise.a0 noise.sigma noise.center
    noise.k noise.f_lo noise.f_hi
                            float   profile parameters (MHz); omitted
                                    frequencies resolve to resonance
    noise.n_tones           int     tone count (default 101)
    noise.normalize         bool    sqrt(n_tones) amplitude normalization
    outputs                 list    comma-separated: populations,
                                    nuclear_marginal, discord
    discord.stride          float   discord evaluation stride (us)
    discord.measured        str     first | second
    discord.grid            pair    "n_theta,n_phi"
"""

from dataclasses import fields as dataclass_fields

from .experiments import NoiseSpec, ScenarioConfig
from .hamiltonians import NVParams, TwoSpinParams


class ConfigError(ValueError):
    """A configuration file is invalid; the message names the field."""


_SCALAR_KEYS = {
    "name": str,
    "model": str,
    "initial_state": str,
    "frame": str,
    "t_end": float,
    "dt": float,
    "record_stride": int,
    "method": str,
    "seed": int,
    "t2": float,
    "drive.mw.rabi": float,
    "drive.mw.carrier": float,
    "drive.rf.rabi": float,
    "drive.rf.carrier": float,
    "discord.stride": float,
    "discord.measured": str,
}
_NOISE_KEYS = {
    "profile": str,
    "rabi": float,
    "frequency": float,
    "a0": float,
    "sigma": float,
    "center": float,
    "k": float,
    "f_lo": float,
    "f_hi": float,
    "n_tones": int,
    "normalize": bool,
}
_TWO_SPIN_FIELDS = [f.name for f in dataclass_fields(TwoSpinParams)]
_NV_FIELDS = [f.name for f in dataclass_fields(NVParams)]


def _parse_value(key: str, raw: str, typ):
    try:
        if typ is bool:
            if raw not in ("true", "false"):
                raise ValueError(raw)
            return raw == "true"
        return typ(raw)
    except ValueError:
        raise ConfigError(f"field {key!r}: cannot parse {raw!r} as {typ.__name__}") from None


def parse_config(text: str) -> ScenarioConfig:
    """Parse configuration text into a ScenarioConfig."""
    pairs = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key in pairs:
            raise ConfigError(f"field {key!r}: duplicate entry")
        pairs[key] = raw

    kwargs = {}
    for key, typ in _SCALAR_KEYS.items():
        if key in pairs:
            attr = {
                "drive.mw.rabi": "mw_rabi",
                "drive.mw.carrier": "mw_carrier",
                "drive.rf.rabi": "rf_rabi",
                "drive.rf.carrier": "rf_carrier",
                "discord.stride": "discord_stride",
                "discord.measured": "discord_measured",
            }.get(key, key)
            kwargs[attr] = _parse_value(key, pairs.pop(key), typ)
    if "outputs" in pairs:
        kwargs["outputs"] = tuple(
            s.strip() for s in pairs.pop("outputs").split(",") if s.strip()
        )
    if "discord.grid" in pairs:
        raw = pairs.pop("discord.grid")
        parts = raw.split(",")
        if len(parts) != 2:
            raise ConfigError(f"field 'discord.grid': expected 'n_theta,n_phi', got {raw!r}")
        kwargs["discord_grid"] = (
            _parse_value("discord.grid", parts[0].strip(), int),
            _parse_value("discord.grid", parts[1].strip(), int),
        )

    model = kwargs.get("model")
    if model is None:
        raise ConfigError("field 'model': required")
    if "name" not in kwargs:
        raise ConfigError("field 'name': required")

    two_spin_kwargs = {}
    nv_kwargs = {}
    noise_kwargs = {}
    for key in list(pairs):
        section, _, leaf = key.partition(".")
        if section == "two_spin" and leaf in _TWO_SPIN_FIELDS:
            two_spin_kwargs[leaf] = _parse_value(key, pairs.pop(key), float)
        elif section == "nv" and leaf in _NV_FIELDS:
            nv_kwargs[leaf] = _parse_value(key, pairs.pop(key), float)
        elif section == "noise" and leaf in _NOISE_KEYS:
            noise_kwargs[leaf] = _parse_value(key, pairs.pop(key), _NOISE_KEYS[leaf])
    if pairs:
        raise ConfigError(f"field {sorted(pairs)[0]!r}: unknown key")

    if model == "two_spin":
        missing = [k for k in ("omega_1", "omega_2", "v0") if k not in two_spin_kwargs]
        if missing:
            raise ConfigError(f"field 'two_spin.{missing[0]}': required for the two_spin model")
        try:
            kwargs["params"] = TwoSpinParams(**two_spin_kwargs)
        except ValueError as exc:
            raise ConfigError(f"field 'two_spin': {exc}") from None
    elif model in ("nv_reduced", "nv_full"):
        try:
            kwargs["params"] = NVParams(**nv_kwargs)
        except ValueError as exc:
            raise ConfigError(f"field 'nv': {exc}") from None
    else:
        raise ConfigError(f"field 'model': unknown model {model!r}")

    if noise_kwargs:
        if "profile" not in noise_kwargs:
            raise ConfigError("field 'noise.profile': required when noise.* keys are present")
        kwargs["noise"] = NoiseSpec(**noise_kwargs)

    return ScenarioConfig(**kwargs)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(value) if isinstance(value, float) else str(value)


def serialize_config(cfg: ScenarioConfig) -> str:
    """Render a ScenarioConfig back to configuration text; the result
    parses to an equal config."""
    lines = [f"name = {cfg.name}", f"model = {cfg.model}"]
    lines.append(f"initial_state = {cfg.initial_state}")
    lines.append(f"frame = {cfg.frame}")
    lines.append(f"t_end = {_fmt(cfg.t_end)}")
    if cfg.dt is not None:
        lines.append(f"dt = {_fmt(cfg.dt)}")
    if cfg.record_stride is not None:
        lines.append(f"record_stride = {cfg.record_stride}")
    lines.append(f"method = {cfg.method}")
    lines.append(f"seed = {cfg.seed}")
    if cfg.t2 is not None:
        lines.append(f"t2 = {_fmt(cfg.t2)}")

    if isinstance(cfg.params, TwoSpinParams):
        for name in _TWO_SPIN_FIELDS:
            lines.append(f"two_spin.{name} = {_fmt(getattr(cfg.params, name))}")
    else:
        for name in _NV_FIELDS:
            lines.append(f"nv.{name} = {_fmt(getattr(cfg.params, name))}")

    lines.append(f"drive.mw.rabi = {_fmt(cfg.mw_rabi)}")
    if cfg.mw_carrier is not None:
        lines.append(f"drive.mw.carrier = {_fmt(cfg.mw_carrier)}")
    lines.append(f"drive.rf.rabi = {_fmt(cfg.rf_rabi)}")
    if cfg.rf_carrier is not None:
        lines.append(f"drive.rf.carrier = {_fmt(cfg.rf_carrier)}")

    if cfg.noise is not None:
        for key, typ in _NOISE_KEYS.items():
            value = getattr(cfg.noise, key)
            if value is not None:
                lines.append(f"noise.{key} = {_fmt(value)}")

    lines.append(f"outputs = {','.join(cfg.outputs)}")
    lines.append(f"discord.stride = {_fmt(cfg.discord_stride)}")
    lines.append(f"discord.measured = {cfg.discord_measured}")
    lines.append(f"discord.grid = {cfg.discord_grid[0]},{cfg.discord_grid[1]}")
    return "\n".join(lines) + "\n"
