import numpy as np
from loguru import logger

from fso_linksim.config import PRBS_TAPS
from fso_linksim.waveform.types import BitSequence


def parse_seed(seed: int | str, register_order: int) -> int:
    """Accept an int state or a bit pattern string such as ``"0000001"`` (MSB first)."""
    if isinstance(seed, str):
        pattern = seed.strip().replace("_", "")
        if not pattern or set(pattern) - {"0", "1"}:
            raise ValueError(f"seed pattern must contain only 0 and 1, got {seed!r}")
        if len(pattern) > register_order:
            raise ValueError(f"seed pattern longer than register order {register_order}")
        return int(pattern, 2)
    if seed < 0 or seed >= 1 << register_order:
        raise ValueError(f"seed {seed} does not fit a {register_order}-bit register")
    return int(seed)


def prbs_generate(register_order: int, seed: int | str, length: int) -> BitSequence:
    """Fibonacci LFSR with maximal-length taps; output is the register MSB."""
    if register_order not in PRBS_TAPS:
        raise ValueError(
            f"Unsupported PRBS order: {register_order}. Supported: {sorted(PRBS_TAPS.keys())}"
        )
    if length < 1:
        raise ValueError(f"PRBS length must be >= 1, got {length}")
    state = parse_seed(seed, register_order)
    if state == 0:
        raise ValueError("degenerate LFSR seed")

    tap_a, tap_b = PRBS_TAPS[register_order]
    mask = (1 << register_order) - 1
    period = mask
    n_run = min(length, period)

    bits = np.empty(n_run, dtype=np.uint8)
    for idx in range(n_run):
        bits[idx] = (state >> (register_order - 1)) & 1
        feedback = ((state >> (tap_a - 1)) ^ (state >> (tap_b - 1))) & 1
        state = ((state << 1) & mask) | feedback

    # the sequence repeats with period 2^n - 1
    if length > n_run:
        bits = np.resize(bits, length)
    logger.debug(f"PRBS[{register_order}] Length[{length}] Ones[{int(bits.sum())}]")
    return BitSequence(bits)
