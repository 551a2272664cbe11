import multiprocessing
from dataclasses import replace

import numpy as np
import pandas as pd
from loguru import logger

from fso_linksim.config import SWEEP_PARAMS
from fso_linksim.errors import ConfigError
from fso_linksim.service.report_io import SWEEP_COLUMNS
from fso_linksim.service.scenario import ScenarioConfig, build_spec
from fso_linksim.service.simulate_link import SimReport, run_link
from fso_linksim.utils.seed_utils import derive_seed


def config_for_point(config: ScenarioConfig, param: str, value: float) -> ScenarioConfig:
    match param:
        case "gamma_db_per_km":
            return replace(config, channel=build_spec(replace, config.channel, gamma_db_per_km=value))
        case "range_km":
            return replace(config, channel=build_spec(replace, config.channel, range_km=value))
        case "power_dbm":
            return replace(config, laser=build_spec(replace, config.laser, power_dbm=value))
        case _:
            raise ConfigError(f"unknown sweep parameter {param!r}, use one of {', '.join(SWEEP_PARAMS)}")


def sweep_points(
    config: ScenarioConfig,
    param: str,
    start: float,
    stop: float,
    steps: int,
    independent_noise: bool = False,
) -> list[tuple[float, ScenarioConfig]]:
    """Point configs for the sweep.

    By default every point reuses the base seed (common random numbers). With
    ``independent_noise`` point i is seeded from (base seed, i).
    """
    if steps < 1:
        raise ConfigError(f"--steps must be >= 1, got {steps}")
    values = np.linspace(start, stop, steps)
    points = []
    for idx, value in enumerate(values):
        try:
            point = config_for_point(config, param, float(value))
        except ConfigError as e:
            raise ConfigError(f"sweep point {param}={value:g} is invalid: {e}") from e
        if independent_noise:
            point = point.with_seed(derive_seed(config.noise.rng_seed, idx))
        points.append((float(value), point))
    return points


def _run_point(point: tuple[float, ScenarioConfig]) -> tuple[float, SimReport]:
    value, config = point
    return value, run_link(config, log_level="DEBUG")


def sweep_row(value: float, report: SimReport) -> dict:
    return {
        "value": value,
        "q_factor": report.eye.q_factor,
        "ber_estimate": report.eye.ber_estimate,
        "link_margin_db": report.budget.link_margin_db,
        "total_db": report.loss.total_db,
        "received_power_dbm": report.received_power_dbm,
    }


def run_sweep_reports(
    config: ScenarioConfig,
    param: str,
    start: float,
    stop: float,
    steps: int,
    workers: int = 1,
    independent_noise: bool = False,
) -> list[tuple[float, SimReport]]:
    if workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {workers}")
    points = sweep_points(config, param, start, stop, steps, independent_noise=independent_noise)
    logger.info(f"Sweep {param} from {start:g} to {stop:g} in {steps} steps, workers={workers}")
    if workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            return pool.map(_run_point, points)
    return [_run_point(point) for point in points]


def sweep_table(results: list[tuple[float, SimReport]]) -> pd.DataFrame:
    return pd.DataFrame([sweep_row(value, report) for value, report in results], columns=SWEEP_COLUMNS)


def run_sweep(
    config: ScenarioConfig,
    param: str,
    start: float,
    stop: float,
    steps: int,
    workers: int = 1,
    independent_noise: bool = False,
) -> pd.DataFrame:
    return sweep_table(run_sweep_reports(config, param, start, stop, steps, workers, independent_noise))
