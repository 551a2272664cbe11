"""
Link margin, LM = 10 log10(P_R / S).

``link_margin_db`` evaluates it with P_R and S in linear power, which is the
dBm difference. ``paper_link_margin`` ratios the dBm numbers directly; it is
only a compatibility mode for the published rain/fog margins and has no
physical unit.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class LinkBudget:
    received_power_dbm: float
    sensitivity_dbm: float
    link_margin_db: float
    paper_link_margin: float | None  # paper-compat, non-physical units
    paper_link_margin_note: str = "paper-compat, non-physical units"


def link_margin_db(p_r_dbm: float, s_dbm: float) -> float:
    if not (math.isfinite(p_r_dbm) and math.isfinite(s_dbm)):
        raise ValueError("received power and sensitivity must be finite")
    return p_r_dbm - s_dbm


def paper_link_margin(p_r_dbm: float, s_dbm: float) -> float:
    if s_dbm == 0 or p_r_dbm / s_dbm <= 0:
        raise ValueError("paper-compat margin undefined")
    return 10 * math.log10(p_r_dbm / s_dbm)


def build_link_budget(received_power_dbm: float, sensitivity_dbm: float) -> LinkBudget:
    try:
        paper_margin = paper_link_margin(received_power_dbm, sensitivity_dbm)
    except ValueError:
        paper_margin = None
    return LinkBudget(
        received_power_dbm=received_power_dbm,
        sensitivity_dbm=sensitivity_dbm,
        link_margin_db=link_margin_db(received_power_dbm, sensitivity_dbm),
        paper_link_margin=paper_margin,
    )
