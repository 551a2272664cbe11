import math

import numpy as np


def dbm_to_watts(p_dbm: float) -> float:
    if not math.isfinite(p_dbm):
        raise ValueError(f"power must be finite, got {p_dbm}")
    return float(10 ** ((p_dbm - 30) / 10))


def watts_to_dbm(p_w: float) -> float:
    if not p_w > 0:
        raise ValueError(f"power must be positive to express in dBm, got {p_w}")
    return float(10 * np.log10(p_w) + 30)


def db_to_ratio(db: float) -> float:
    """Power ratio for a loss of ``db`` decibels."""
    return float(10 ** (-db / 10))
