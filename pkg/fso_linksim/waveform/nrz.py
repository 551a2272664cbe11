import numpy as np

from fso_linksim.config import BIT_RATE_HZ, NRZ_LEVEL_ONE, NRZ_LEVEL_ZERO
from fso_linksim.waveform.types import BitSequence, SampledWaveform


def nrz_encode(
    bits: BitSequence,
    samples_per_bit: int,
    level_one: float = NRZ_LEVEL_ONE,
    level_zero: float = NRZ_LEVEL_ZERO,
    bit_rate: float = BIT_RATE_HZ,
) -> SampledWaveform:
    if bits.length == 0:
        raise ValueError("cannot NRZ-encode an empty bit sequence")
    if samples_per_bit < 1:
        raise ValueError(f"samples_per_bit must be >= 1, got {samples_per_bit}")
    if not level_one > level_zero:
        raise ValueError("level_one must be greater than level_zero")
    levels = np.where(bits.bits == 1, level_one, level_zero)
    return SampledWaveform(
        samples=np.repeat(levels, samples_per_bit),
        sample_rate=bit_rate * samples_per_bit,
        unit="drive",
    )


def nrz_decide(
    wave: SampledWaveform,
    samples_per_bit: int,
    level_one: float = NRZ_LEVEL_ONE,
    level_zero: float = NRZ_LEVEL_ZERO,
) -> BitSequence:
    """Sample at bit centers and threshold halfway between the levels."""
    centers = wave.samples[samples_per_bit // 2 :: samples_per_bit]
    return BitSequence((centers > (level_one + level_zero) / 2).astype(np.uint8))
