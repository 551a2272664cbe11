import json
from dataclasses import asdict
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from fso_linksim.config import TABLE_SIGNIFICANT_DIGITS
from fso_linksim.metrics.eye import EyeDiagram
from fso_linksim.service.simulate_link import SimReport

EYE_CSV_COLUMNS = ["trace_id", "phase_ui", "current_a"]
SWEEP_COLUMNS = ["value", "q_factor", "ber_estimate", "link_margin_db", "total_db", "received_power_dbm"]


def report_to_dict(report: SimReport, include_timing: bool = False) -> dict[str, Any]:
    data = {
        "config": report.config.to_dict(),
        "loss": asdict(report.loss),
        "received_power_dbm": report.received_power_dbm,
        "modulation_penalty_db": report.modulation_penalty_db,
        "budget": asdict(report.budget),
        "eye": asdict(report.eye),
        "counted_errors": report.counted_errors,
        "counted_bits": report.counted_bits,
        "counted_ber": report.counted_ber,
    }
    if include_timing:
        data["elapsed_s"] = report.elapsed_s
    return data


def report_to_json(report: SimReport, include_timing: bool = False) -> str:
    # full double precision; an infinite Q is written as Infinity
    return json.dumps(report_to_dict(report, include_timing=include_timing), indent=2) + "\n"


def write_report_json(report: SimReport, path: str | Path, include_timing: bool = False) -> None:
    Path(path).write_text(report_to_json(report, include_timing=include_timing))


def read_report_json(path: str | Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text())


def eye_to_frame(eye: EyeDiagram) -> pd.DataFrame:
    n_traces, width = eye.traces.shape
    return pd.DataFrame(
        {
            "trace_id": np.repeat(np.arange(n_traces), width),
            "phase_ui": np.tile(np.arange(width) / eye.samples_per_ui, n_traces),
            "current_a": eye.traces.reshape(-1),
        },
        columns=EYE_CSV_COLUMNS,
    )


def write_eye_csv(eye: EyeDiagram, path: str | Path) -> None:
    eye_to_frame(eye).to_csv(path, index=False)


def read_eye_csv(path: str | Path) -> pd.DataFrame:
    return pd.read_csv(path)


def write_sweep_csv(table: pd.DataFrame, path: str | Path) -> None:
    table.to_csv(path, index=False)


def read_sweep_csv(path: str | Path) -> pd.DataFrame:
    return pd.read_csv(path)


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.{TABLE_SIGNIFICANT_DIGITS}g}"
    return str(value)


def format_table(table: pd.DataFrame) -> str:
    digits = TABLE_SIGNIFICANT_DIGITS
    return table.to_string(index=False, float_format=lambda x: f"{x:.{digits}g}")


def report_summary(report: SimReport) -> pd.DataFrame:
    budget = report.budget
    rows = [
        ("preset", report.config.preset or "-"),
        ("atmospheric_db", report.loss.atmospheric_db),
        ("geometric_db", report.loss.geometric_db),
        ("extra_db", report.loss.extra_db),
        ("total_db", report.loss.total_db),
        ("transmittance", report.loss.transmittance),
        ("modulation_penalty_db", report.modulation_penalty_db),
        ("received_power_dbm", report.received_power_dbm),
        ("link_margin_db", budget.link_margin_db),
        ("paper_link_margin", budget.paper_link_margin if budget.paper_link_margin is not None else "undefined"),
        ("q_factor", report.eye.q_factor),
        ("ber_estimate", report.eye.ber_estimate),
        ("eye_height_a", report.eye.eye_height),
        ("sampling_phase_ui", report.eye.sampling_phase),
        ("counted_ber", report.counted_ber),
        ("elapsed_s", report.elapsed_s),
    ]
    return pd.DataFrame([(name, _fmt(value)) for name, value in rows], columns=["metric", "value"])
