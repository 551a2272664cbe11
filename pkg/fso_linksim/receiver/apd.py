from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy.constants import e as ELEMENTARY_CHARGE

from fso_linksim.config import (
    APD_DARK_CURRENT_A,
    APD_GAIN,
    APD_IONIZATION_RATIO,
    APD_RESPONSIVITY_A_PER_W,
    APD_THERMAL_PSD_A2_PER_HZ,
    FILTER_ORDER,
    NOISE_SEED,
    RECEIVER_CUTOFF_FACTOR,
)
from fso_linksim.optics.frontend import OpticalSignal
from fso_linksim.waveform.bessel import bessel_lowpass
from fso_linksim.waveform.types import FilterSpec, SampledWaveform


@dataclass(frozen=True)
class ApdSpec:
    responsivity_a_per_w: float = APD_RESPONSIVITY_A_PER_W
    dark_current_a: float = APD_DARK_CURRENT_A
    ionization_ratio: float = APD_IONIZATION_RATIO
    gain: float = APD_GAIN
    thermal_psd_a2_per_hz: float = APD_THERMAL_PSD_A2_PER_HZ

    def __post_init__(self):
        if not self.responsivity_a_per_w > 0:
            raise ValueError(f"responsivity must be > 0, got {self.responsivity_a_per_w}")
        if not self.dark_current_a >= 0:
            raise ValueError(f"dark current must be >= 0, got {self.dark_current_a}")
        if not 0 <= self.ionization_ratio <= 1:
            raise ValueError(f"ionization ratio must be in [0, 1], got {self.ionization_ratio}")
        if not self.gain >= 1:
            raise ValueError(f"APD gain must be >= 1, got {self.gain}")
        if not self.thermal_psd_a2_per_hz >= 0:
            raise ValueError(f"thermal PSD must be >= 0, got {self.thermal_psd_a2_per_hz}")


@dataclass(frozen=True)
class NoiseConfig:
    enabled: bool = True
    rng_seed: int = NOISE_SEED

    def __post_init__(self):
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed}")


def excess_noise_factor(spec: ApdSpec) -> float:
    k, m = spec.ionization_ratio, spec.gain
    return k * m + (1 - k) * (2 - 1 / m)


def noise_variance(photocurrent_a: np.ndarray, spec: ApdSpec, sample_rate: float) -> np.ndarray:
    """Per-sample variance of shot + excess + thermal noise, white up to Nyquist.

    ``photocurrent_a`` is the primary (unmultiplied) current R*P.
    """
    bandwidth = sample_rate / 2
    shot = (
        2
        * ELEMENTARY_CHARGE
        * spec.gain**2
        * excess_noise_factor(spec)
        * (photocurrent_a + spec.dark_current_a)
        * bandwidth
    )
    return shot + spec.thermal_psd_a2_per_hz * bandwidth


def apd_detect(optical: OpticalSignal, spec: ApdSpec, noise: NoiseConfig) -> SampledWaveform:
    primary = spec.responsivity_a_per_w * optical.power_w.samples
    current = spec.gain * primary + spec.dark_current_a
    if noise.enabled:
        # one standard-normal draw per sample, so a fixed seed scales the same realization
        rng = np.random.default_rng(noise.rng_seed)
        sigma = np.sqrt(noise_variance(primary, spec, optical.sample_rate))
        current = current + sigma * rng.standard_normal(current.size)
    logger.debug(
        f"Stage[apd] M[{spec.gain}] F[{excess_noise_factor(spec):.4f}] "
        f"Noise[{'on' if noise.enabled else 'off'}] MeanI[{current.mean():.6g}A]"
    )
    return optical.power_w.with_samples(current, unit="ampere")


def receive_filter(
    current: SampledWaveform,
    bit_rate: float,
    cutoff_factor: float = RECEIVER_CUTOFF_FACTOR,
) -> SampledWaveform:
    return bessel_lowpass(current, FilterSpec(order=FILTER_ORDER, cutoff_hz=cutoff_factor * bit_rate))
