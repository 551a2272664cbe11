import pandas as pd
import pytest

from fso_linksim.errors import ConfigError
from fso_linksim.service.report_io import SWEEP_COLUMNS, read_sweep_csv, write_sweep_csv
from fso_linksim.service.scenario import ScenarioConfig
from fso_linksim.service.sweep import run_sweep, sweep_points


def test_q_falls_with_attenuation():
    table = run_sweep(ScenarioConfig().with_seed(7), "gamma_db_per_km", 0, 100, 11)
    assert list(table.columns) == SWEEP_COLUMNS
    assert len(table) == 11
    assert table["value"].tolist() == pytest.approx([0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100])
    assert table["q_factor"].is_monotonic_decreasing
    assert table["total_db"].is_monotonic_increasing


def test_power_sweep_shifts_received_power():
    table = run_sweep(ScenarioConfig(), "power_dbm", 0, 20, 3)
    diffs = table["received_power_dbm"].diff().dropna()
    assert diffs.tolist() == pytest.approx([10.0, 10.0], abs=1e-9)


def test_parallel_matches_serial():
    config = ScenarioConfig()
    serial = run_sweep(config, "range_km", 0.2, 1.0, 3, workers=1, independent_noise=True)
    parallel = run_sweep(config, "range_km", 0.2, 1.0, 3, workers=2, independent_noise=True)
    pd.testing.assert_frame_equal(serial, parallel)


def test_point_seeds():
    config = ScenarioConfig()
    shared = [point.noise.rng_seed for _, point in sweep_points(config, "range_km", 0.1, 1.0, 4)]
    assert shared == [config.noise.rng_seed] * 4
    independent = [point.noise.rng_seed for _, point in sweep_points(config, "range_km", 0.1, 1.0, 4, True)]
    assert len(set(independent)) == 4
    again = [point.noise.rng_seed for _, point in sweep_points(config, "range_km", 0.1, 1.0, 4, True)]
    assert independent == again


@pytest.mark.parametrize(
    "param, start, stop, steps, match",
    [
        ("wavelength", 0, 1, 2, "unknown sweep parameter"),
        ("range_km", 0, 1, 2, "sweep point range_km=0 is invalid"),
        ("gamma_db_per_km", 0, 1, 0, "--steps must be >= 1"),
    ],
)
def test_invalid_sweeps(param, start, stop, steps, match):
    with pytest.raises(ConfigError, match=match):
        sweep_points(ScenarioConfig(), param, start, stop, steps)


def test_sweep_csv_file(tmp_path):
    table = run_sweep(ScenarioConfig(), "range_km", 0.5, 1.0, 2)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(table, path)
    pd.testing.assert_frame_equal(read_sweep_csv(path), table, check_exact=False, rtol=1e-12)
