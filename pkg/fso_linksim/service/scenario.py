import math
import tomllib
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import tomli_w
from loguru import logger

from fso_linksim.channel.fso_channel import ChannelParams, preset
from fso_linksim.config import (
    BIT_RATE_HZ,
    DEFAULT_PRESET,
    PRBS_ORDER,
    PRBS_SEED,
    PRBS_TAPS,
    RECEIVER_CUTOFF_FACTOR,
    RECEIVER_SENSITIVITY_DBM,
    SAMPLES_PER_BIT,
    SEQUENCE_LENGTH_BITS,
    TX_CUTOFF_FACTOR,
    WEATHER_PRESETS,
)
from fso_linksim.errors import ConfigError
from fso_linksim.optics.frontend import LaserSpec, ModulatorSpec
from fso_linksim.receiver.apd import ApdSpec, NoiseConfig

SECTIONS = {
    "laser": LaserSpec,
    "modulator": ModulatorSpec,
    "channel": ChannelParams,
    "apd": ApdSpec,
    "noise": NoiseConfig,
}


@dataclass(frozen=True)
class ScenarioConfig:
    bit_rate_hz: float = BIT_RATE_HZ
    sequence_length_bits: int = SEQUENCE_LENGTH_BITS
    samples_per_bit: int = SAMPLES_PER_BIT
    prbs_order: int = PRBS_ORDER
    prbs_seed: int = PRBS_SEED
    tx_cutoff_factor: float = TX_CUTOFF_FACTOR
    receiver_cutoff_factor: float = RECEIVER_CUTOFF_FACTOR
    sensitivity_dbm: float = RECEIVER_SENSITIVITY_DBM
    filters_enabled: bool = True
    preset: str | None = DEFAULT_PRESET
    laser: LaserSpec = field(default_factory=LaserSpec)
    modulator: ModulatorSpec = field(default_factory=ModulatorSpec)
    channel: ChannelParams = field(default_factory=lambda: preset(DEFAULT_PRESET))
    apd: ApdSpec = field(default_factory=ApdSpec)
    noise: NoiseConfig = field(default_factory=NoiseConfig)

    def __post_init__(self):
        if not self.bit_rate_hz > 0:
            raise ConfigError(f"bit_rate_hz must be > 0, got {self.bit_rate_hz}")
        if self.sequence_length_bits < 2:
            raise ConfigError(f"sequence_length_bits must be >= 2, got {self.sequence_length_bits}")
        if self.samples_per_bit < 1:
            raise ConfigError(f"samples_per_bit must be >= 1, got {self.samples_per_bit}")
        if self.prbs_order not in PRBS_TAPS:
            raise ConfigError(f"prbs_order {self.prbs_order} unsupported, use one of {sorted(PRBS_TAPS)}")
        if not 0 < self.prbs_seed < 1 << self.prbs_order:
            raise ConfigError(f"prbs_seed must be a non-zero {self.prbs_order}-bit value, got {self.prbs_seed}")
        for name in ("tx_cutoff_factor", "receiver_cutoff_factor"):
            factor = getattr(self, name)
            if not 0 < factor < self.samples_per_bit / 2:
                raise ConfigError(
                    f"{name} must be in (0, samples_per_bit/2 = {self.samples_per_bit / 2}), got {factor}"
                )
        if not math.isfinite(self.sensitivity_dbm):
            raise ConfigError(f"sensitivity_dbm must be finite, got {self.sensitivity_dbm}")
        if self.preset is not None and self.preset not in WEATHER_PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}, use one of {', '.join(WEATHER_PRESETS)}")

    @property
    def total_samples(self) -> int:
        return self.sequence_length_bits * self.samples_per_bit

    @property
    def sample_rate_hz(self) -> float:
        return self.bit_rate_hz * self.samples_per_bit

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        if data["preset"] is None:
            del data["preset"]
        return data

    def with_preset(self, name: str) -> "ScenarioConfig":
        """Switch weather; gamma and range come from the preset, geometry is kept."""
        weather = build_spec(preset, name)
        channel = replace(self.channel, gamma_db_per_km=weather.gamma_db_per_km, range_km=weather.range_km)
        return replace(self, preset=name, channel=channel)

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, noise=build_spec(NoiseConfig, enabled=self.noise.enabled, rng_seed=seed))

    def without_noise(self) -> "ScenarioConfig":
        return replace(self, noise=replace(self.noise, enabled=False))


def build_spec(factory, *args, **kwargs):
    try:
        return factory(*args, **kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def _section(name: str, values: Any, base: Any | None = None):
    if not isinstance(values, dict):
        raise ConfigError(f"[{name}] must be a table")
    cls = SECTIONS[name]
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{name}]: {', '.join(unknown)}")
    if base is not None:
        return build_spec(replace, base, **values)
    return build_spec(cls, **values)


def config_from_dict(data: dict[str, Any]) -> ScenarioConfig:
    data = dict(data)
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

    preset_name = data.pop("preset", None)
    channel_base = build_spec(preset, preset_name) if preset_name is not None else None
    kwargs: dict[str, Any] = {"preset": preset_name}
    for name in SECTIONS:
        if name in data:
            base = channel_base if name == "channel" else None
            kwargs[name] = _section(name, data.pop(name), base=base)
        elif name == "channel" and channel_base is not None:
            kwargs[name] = channel_base
    if "channel" not in kwargs:
        kwargs["channel"] = preset(DEFAULT_PRESET)
        kwargs["preset"] = DEFAULT_PRESET
    kwargs.update(data)
    return build_spec(ScenarioConfig, **kwargs)


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror or e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML in {path}: {e}") from e
    logger.debug(f"Loaded config from {path}")
    return config_from_dict(data)


def save_config(config: ScenarioConfig, path: str | Path) -> None:
    Path(path).write_text(tomli_w.dumps(config.to_dict()))


def resolve_config(
    config_path: str | Path | None = None,
    preset_name: str | None = None,
    seed: int | None = None,
    no_noise: bool = False,
) -> ScenarioConfig:
    """Defaults < config file < CLI flags."""
    config = load_config(config_path) if config_path else ScenarioConfig()
    if preset_name is not None:
        config = config.with_preset(preset_name)
    if seed is not None:
        config = config.with_seed(seed)
    if no_noise:
        config = config.without_noise()
    return config
