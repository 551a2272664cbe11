from dataclasses import replace

from loguru import logger

from fso_linksim.config import MAX_RANGE_MAX_KM, MAX_RANGE_MIN_KM, MAX_RANGE_TOLERANCE_KM
from fso_linksim.errors import UnreachableTargetError
from fso_linksim.service.scenario import ScenarioConfig
from fso_linksim.service.simulate_link import run_link


def q_at_range(config: ScenarioConfig, range_km: float) -> float:
    point = replace(config, channel=replace(config.channel, range_km=range_km))
    return run_link(point, log_level="DEBUG").eye.q_factor


def max_range_for_q(
    config: ScenarioConfig,
    q_target: float,
    min_km: float = MAX_RANGE_MIN_KM,
    max_km: float = MAX_RANGE_MAX_KM,
    tolerance_km: float = MAX_RANGE_TOLERANCE_KM,
) -> float:
    """Largest range with Q >= q_target, by bisection on the fixed-seed Q(range) curve."""
    if not q_target > 0:
        raise ValueError(f"q_target must be > 0, got {q_target}")

    q_min = q_at_range(config, min_km)
    if q_min < q_target:
        raise UnreachableTargetError(
            f"Q target {q_target:g} unreachable: Q is only {q_min:.4g} at the minimal range of {min_km * 1000:g} m"
        )
    if q_at_range(config, max_km) >= q_target:
        logger.warning(f"Q target {q_target:g} still met at the search limit {max_km:g} km")
        return max_km

    lo, hi = min_km, max_km
    while hi - lo > tolerance_km:
        mid = (lo + hi) / 2
        q_mid = q_at_range(config, mid)
        logger.debug(f"Bisect Range[{mid:.6f}km] Q[{q_mid:.4f}] Bracket[{lo:.6f}, {hi:.6f}]")
        if q_mid >= q_target:
            lo = mid
        else:
            hi = mid
    logger.info(f"MaxRange[{lo:.4f}km] QTarget[{q_target:g}] Preset[{config.preset or '-'}]")
    return lo
