import json
import math

import pytest

from fso_linksim.service.report_io import (
    EYE_CSV_COLUMNS,
    read_eye_csv,
    read_report_json,
    report_summary,
    report_to_dict,
    report_to_json,
    write_eye_csv,
    write_report_json,
)
from fso_linksim.service.scenario import ScenarioConfig
from fso_linksim.service.simulate_link import run_link


@pytest.fixture(scope="module")
def fog_report():
    return run_link(ScenarioConfig().with_preset("fog"))


def test_json_is_deterministic_without_timing(fog_report):
    again = run_link(ScenarioConfig().with_preset("fog"))
    assert report_to_json(fog_report) == report_to_json(again)
    assert "elapsed_s" not in report_to_dict(fog_report)
    assert "elapsed_s" in report_to_dict(fog_report, include_timing=True)


def test_json_file(tmp_path, fog_report):
    path = tmp_path / "report.json"
    write_report_json(fog_report, path)
    data = read_report_json(path)
    assert data["config"]["preset"] == "fog"
    assert data["loss"]["atmospheric_db"] == pytest.approx(30.0)
    assert data["eye"]["q_factor"] == fog_report.eye.q_factor
    assert data["budget"]["paper_link_margin_note"] == "paper-compat, non-physical units"


def test_infinite_q_survives_json():
    config = ScenarioConfig(filters_enabled=False).without_noise()
    data = json.loads(report_to_json(run_link(config)))
    assert math.isinf(data["eye"]["q_factor"])


def test_eye_csv(tmp_path, fog_report):
    path = tmp_path / "eye.csv"
    write_eye_csv(fog_report.eye_diagram, path)
    frame = read_eye_csv(path)
    assert list(frame.columns) == EYE_CSV_COLUMNS
    assert len(frame) == 127 * 128
    assert frame["trace_id"].nunique() == 127
    assert frame["phase_ui"].max() == pytest.approx(127 / 64)


def test_summary_lists_headline_metrics(fog_report):
    summary = report_summary(fog_report)
    metrics = dict(zip(summary["metric"], summary["value"]))
    assert metrics["preset"] == "fog"
    assert float(metrics["total_db"]) == pytest.approx(fog_report.loss.total_db, rel=1e-3)
    assert "q_factor" in metrics
