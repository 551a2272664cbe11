import pandas as pd
from loguru import logger

from fso_linksim.config import REFERENCE_Q_FACTOR, REFERENCE_RECEIVED_POWER_DBM
from fso_linksim.service.scenario import ScenarioConfig
from fso_linksim.service.simulate_link import SimReport, run_link

COMPARE_COLUMNS = [
    "preset",
    "gamma_db_per_km",
    "range_km",
    "total_db",
    "received_power_dbm",
    "link_margin_db",
    "paper_link_margin",
    "q_factor",
    "ber_estimate",
    "reference_received_power_dbm",
    "reference_q_factor",
]


def compare_presets(config: ScenarioConfig, names: list[str]) -> tuple[pd.DataFrame, list[SimReport]]:
    """Run the same scenario under several weather presets (same seed and geometry)."""
    reports = []
    rows = []
    for name in names:
        logger.info(f"Compare preset {name}")
        report = run_link(config.with_preset(name))
        reports.append(report)
        rows.append(
            {
                "preset": name,
                "gamma_db_per_km": report.config.channel.gamma_db_per_km,
                "range_km": report.config.channel.range_km,
                "total_db": report.loss.total_db,
                "received_power_dbm": report.received_power_dbm,
                "link_margin_db": report.budget.link_margin_db,
                "paper_link_margin": report.budget.paper_link_margin,
                "q_factor": report.eye.q_factor,
                "ber_estimate": report.eye.ber_estimate,
                "reference_received_power_dbm": REFERENCE_RECEIVED_POWER_DBM.get(name),
                "reference_q_factor": REFERENCE_Q_FACTOR.get(name),
            }
        )
    return pd.DataFrame(rows, columns=COMPARE_COLUMNS), reports
