from dataclasses import dataclass, field
from typing import Literal

import numpy as np

Unit = Literal["drive", "ampere", "watt"]


@dataclass(frozen=True, eq=False)
class BitSequence:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 1:
            raise ValueError("bit sequence must be one-dimensional")
        if bits.size and not np.isin(bits, (0, 1)).all():
            raise ValueError("bit sequence may only contain 0 and 1")
        object.__setattr__(self, "bits", bits.astype(np.uint8))

    @property
    def length(self) -> int:
        return int(self.bits.size)

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True, eq=False)
class SampledWaveform:
    """Uniformly sampled real signal. ``unit`` is drive (normalized), ampere or watt."""

    samples: np.ndarray
    sample_rate: float
    unit: Unit = "drive"

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError("waveform samples must be one-dimensional")
        if not self.sample_rate > 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.isfinite(samples).all():
            raise ValueError("waveform contains NaN or Inf samples")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate

    def with_samples(self, samples: np.ndarray, unit: Unit | None = None) -> "SampledWaveform":
        return SampledWaveform(samples=samples, sample_rate=self.sample_rate, unit=unit or self.unit)


@dataclass(frozen=True)
class FilterSpec:
    order: int
    cutoff_hz: float
    kind: Literal["bessel-lowpass"] = field(default="bessel-lowpass")

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"filter order must be >= 1, got {self.order}")
        if not self.cutoff_hz > 0:
            raise ValueError(f"cutoff_hz must be positive, got {self.cutoff_hz}")
        if self.kind != "bessel-lowpass":
            raise ValueError(f"unsupported filter kind {self.kind}")
