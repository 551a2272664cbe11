import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from fso_linksim.config import (
    LASER_LINEWIDTH_HZ,
    LASER_POWER_DBM,
    LASER_WAVELENGTH_NM,
    MZM_EXTINCTION_RATIO_DB,
    MZM_INSERTION_LOSS_DB,
)
from fso_linksim.utils.power_utils import db_to_ratio, dbm_to_watts
from fso_linksim.waveform.types import SampledWaveform


@dataclass(frozen=True)
class LaserSpec:
    wavelength_nm: float = LASER_WAVELENGTH_NM
    power_dbm: float = LASER_POWER_DBM
    # Stored for completeness; a power-envelope model has no use for it.
    linewidth_hz: float = LASER_LINEWIDTH_HZ

    def __post_init__(self):
        if not self.wavelength_nm > 0:
            raise ValueError(f"wavelength_nm must be positive, got {self.wavelength_nm}")
        if not math.isfinite(self.power_dbm):
            raise ValueError(f"power_dbm must be finite, got {self.power_dbm}")
        if self.linewidth_hz < 0:
            raise ValueError(f"linewidth_hz must be >= 0, got {self.linewidth_hz}")


@dataclass(frozen=True)
class ModulatorSpec:
    extinction_ratio_db: float = MZM_EXTINCTION_RATIO_DB  # math.inf for perfect extinction
    insertion_loss_db: float = MZM_INSERTION_LOSS_DB

    def __post_init__(self):
        if not self.extinction_ratio_db > 0:
            raise ValueError(f"extinction_ratio_db must be positive, got {self.extinction_ratio_db}")
        if not (self.insertion_loss_db >= 0 and math.isfinite(self.insertion_loss_db)):
            raise ValueError(f"insertion_loss_db must be finite and >= 0, got {self.insertion_loss_db}")

    @property
    def off_state_fraction(self) -> float:
        return 0.0 if math.isinf(self.extinction_ratio_db) else db_to_ratio(self.extinction_ratio_db)


@dataclass(frozen=True, eq=False)
class OpticalSignal:
    power_w: SampledWaveform
    wavelength_nm: float

    def __post_init__(self):
        if self.power_w.unit != "watt":
            raise ValueError(f"optical power must be in watt, got {self.power_w.unit}")
        if (self.power_w.samples < 0).any():
            raise ValueError("optical power samples must be >= 0")

    def __len__(self) -> int:
        return len(self.power_w)

    @property
    def sample_rate(self) -> float:
        return self.power_w.sample_rate

    @property
    def mean_power_w(self) -> float:
        return float(np.mean(self.power_w.samples))


def cw_laser(spec: LaserSpec, num_samples: int, sample_rate: float) -> OpticalSignal:
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    power = np.full(num_samples, dbm_to_watts(spec.power_dbm))
    return OpticalSignal(
        power_w=SampledWaveform(samples=power, sample_rate=sample_rate, unit="watt"),
        wavelength_nm=spec.wavelength_nm,
    )


def mzm_modulate(carrier: OpticalSignal, drive: SampledWaveform, spec: ModulatorSpec) -> OpticalSignal:
    """Linear intensity gate: P_out = P_in * IL * (eps + (1 - eps) * d), d clipped to [0, 1]."""
    if drive.unit != "drive":
        raise ValueError(f"modulator drive must be a normalized drive waveform, got {drive.unit}")
    if len(drive) != len(carrier):
        raise ValueError(f"drive has {len(drive)} samples, carrier has {len(carrier)}")
    if not math.isclose(drive.sample_rate, carrier.sample_rate, rel_tol=1e-12):
        raise ValueError(f"drive rate {drive.sample_rate} Hz does not match carrier rate {carrier.sample_rate} Hz")

    eps = spec.off_state_fraction
    d = np.clip(drive.samples, 0.0, 1.0)
    power = carrier.power_w.samples * db_to_ratio(spec.insertion_loss_db) * (eps + (1.0 - eps) * d)
    logger.debug(f"MZM ER[{spec.extinction_ratio_db}dB] IL[{spec.insertion_loss_db}dB] Clipped[{int((d != drive.samples).sum())}]")
    return OpticalSignal(power_w=carrier.power_w.with_samples(power), wavelength_nm=carrier.wavelength_nm)
