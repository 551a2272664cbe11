"""
Free-space channel: Beer-Lambert attenuation plus geometric beam-spread loss.

gamma is kept in dB/km. In neper form the transmittance is
exp(-gamma_np * d) with gamma_np = gamma_db / (10 * log10(e)), which equals
10 ** (-gamma_db * d / 10).

Geometric capture fraction: g = min(1, (d_rx / (d_tx + theta * L)) ** 2),
all lengths in meters.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from loguru import logger

from fso_linksim.config import BEAM_DIVERGENCE_RAD, RX_APERTURE_M, TX_APERTURE_M, WEATHER_PRESETS
from fso_linksim.optics.frontend import OpticalSignal
from fso_linksim.utils.power_utils import db_to_ratio

NEPER_PER_DB = 1.0 / (10.0 * math.log10(math.e))


@dataclass(frozen=True)
class ChannelParams:
    gamma_db_per_km: float
    range_km: float
    tx_aperture_m: float = TX_APERTURE_M
    rx_aperture_m: float = RX_APERTURE_M
    divergence_rad: float = BEAM_DIVERGENCE_RAD
    extra_loss_db: float = 0.0

    def __post_init__(self):
        if not self.gamma_db_per_km >= 0:
            raise ValueError(f"gamma_db_per_km must be >= 0, got {self.gamma_db_per_km}")
        if not self.range_km > 0:
            raise ValueError(f"range_km must be > 0, got {self.range_km}")
        if not (self.tx_aperture_m > 0 and self.rx_aperture_m > 0):
            raise ValueError("aperture diameters must be > 0")
        if not self.divergence_rad >= 0:
            raise ValueError(f"divergence_rad must be >= 0, got {self.divergence_rad}")
        if not self.extra_loss_db >= 0:
            raise ValueError(f"extra_loss_db must be >= 0, got {self.extra_loss_db}")

    def without_geometric_loss(self) -> "ChannelParams":
        return replace(self, divergence_rad=0.0, rx_aperture_m=max(self.rx_aperture_m, self.tx_aperture_m))


@dataclass(frozen=True)
class LinkLossBreakdown:
    atmospheric_db: float
    geometric_db: float
    extra_db: float
    total_db: float
    transmittance: float


def transmittance(gamma_db_per_km: float, range_km: float) -> float:
    if gamma_db_per_km < 0 or range_km < 0:
        raise ValueError(f"gamma and range must be non-negative, got {gamma_db_per_km}, {range_km}")
    return float(np.exp(-gamma_db_per_km * NEPER_PER_DB * range_km))


def intensity_at(i0: float, gamma_db_per_km: float, range_km: float) -> float:
    if i0 < 0:
        raise ValueError(f"initial intensity must be >= 0, got {i0}")
    return i0 * transmittance(gamma_db_per_km, range_km)


def geometric_loss_db(p: ChannelParams) -> float:
    spot_m = p.tx_aperture_m + p.divergence_rad * p.range_km * 1000.0
    capture = min(1.0, (p.rx_aperture_m / spot_m) ** 2)
    return max(0.0, -10.0 * math.log10(capture))


def link_loss(p: ChannelParams) -> LinkLossBreakdown:
    atmospheric_db = p.gamma_db_per_km * p.range_km
    geometric_db = geometric_loss_db(p)
    return LinkLossBreakdown(
        atmospheric_db=atmospheric_db,
        geometric_db=geometric_db,
        extra_db=p.extra_loss_db,
        total_db=atmospheric_db + geometric_db + p.extra_loss_db,
        transmittance=db_to_ratio(atmospheric_db),
    )


def apply_channel(signal: OpticalSignal, p: ChannelParams) -> tuple[OpticalSignal, LinkLossBreakdown]:
    breakdown = link_loss(p)
    power = signal.power_w.samples * db_to_ratio(breakdown.total_db)
    logger.debug(
        f"Stage[channel] Atm[{breakdown.atmospheric_db:.4f}dB] Geo[{breakdown.geometric_db:.4f}dB] "
        f"Total[{breakdown.total_db:.4f}dB] Tau[{breakdown.transmittance:.4f}]"
    )
    return OpticalSignal(power_w=signal.power_w.with_samples(power), wavelength_nm=signal.wavelength_nm), breakdown


def preset(name: str) -> ChannelParams:
    if name not in WEATHER_PRESETS:
        raise ValueError(f"Unknown weather preset {name!r}. Presets: {', '.join(WEATHER_PRESETS)}")
    gamma_db_per_km, range_km = WEATHER_PRESETS[name]
    return ChannelParams(gamma_db_per_km=gamma_db_per_km, range_km=range_km)
