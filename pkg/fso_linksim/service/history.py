import datetime
import json

import pandas as pd

from fso_linksim.connector.db_connector import RUN_FIELDS, FsoDbConnector
from fso_linksim.service.simulate_link import SimReport


def run_record(command: str, report: SimReport) -> dict:
    config = report.config
    return {
        "command": command,
        "preset": config.preset or "-",
        "seed": config.noise.rng_seed,
        "gamma_db_per_km": config.channel.gamma_db_per_km,
        "range_km": config.channel.range_km,
        "power_dbm": config.laser.power_dbm,
        "total_db": report.loss.total_db,
        "received_power_dbm": report.received_power_dbm,
        "link_margin_db": report.budget.link_margin_db,
        "q_factor": report.eye.q_factor,
        "ber_estimate": report.eye.ber_estimate,
        "config_json": json.dumps(config.to_dict()),
        "created_dt": datetime.datetime.now(tz=datetime.timezone.utc),
    }


class RunHistory:
    def __init__(self, db_url: str = ""):
        self.db_conn = FsoDbConnector(db_url=db_url)

    def record(self, command: str, reports: list[SimReport]) -> bool:
        return self.db_conn.insert_runs([run_record(command, report) for report in reports])

    def prepare_history(self, limit: int = 20) -> pd.DataFrame:
        history_df = pd.DataFrame(self.db_conn.get_runs(limit=limit), columns=["id"] + RUN_FIELDS)
        history_df.drop(columns=["config_json"], inplace=True)
        history_df["created_dt"] = history_df["created_dt"].apply(lambda x: x.isoformat(timespec="seconds"))
        return history_df
