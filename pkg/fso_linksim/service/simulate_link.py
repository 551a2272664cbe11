import contextlib
import time
from dataclasses import dataclass, field
from typing import Generator

import numpy as np
from loguru import logger

from fso_linksim.channel.fso_channel import LinkLossBreakdown, apply_channel
from fso_linksim.config import FILTER_ORDER
from fso_linksim.errors import FsoLinkSimError, StageError
from fso_linksim.metrics.eye import EyeDiagram, EyeMetrics, count_bit_errors, eye_fold, eye_metrics
from fso_linksim.metrics.link_budget import LinkBudget, build_link_budget
from fso_linksim.optics.frontend import cw_laser, mzm_modulate
from fso_linksim.receiver.apd import apd_detect, receive_filter
from fso_linksim.service.scenario import ScenarioConfig
from fso_linksim.utils.power_utils import watts_to_dbm
from fso_linksim.waveform.bessel import bessel_lowpass, group_delay_s
from fso_linksim.waveform.nrz import nrz_encode
from fso_linksim.waveform.prbs import prbs_generate
from fso_linksim.waveform.types import FilterSpec


@dataclass(frozen=True)
class SimReport:
    config: ScenarioConfig
    loss: LinkLossBreakdown
    received_power_dbm: float
    modulation_penalty_db: float
    budget: LinkBudget
    eye: EyeMetrics
    counted_errors: int
    counted_bits: int
    elapsed_s: float
    eye_diagram: EyeDiagram | None = field(default=None, repr=False, compare=False)

    @property
    def counted_ber(self) -> float:
        return self.counted_errors / self.counted_bits


@contextlib.contextmanager
def stage(name: str) -> Generator[None, None, None]:
    try:
        yield
    except FsoLinkSimError:
        raise
    except (ValueError, ArithmeticError) as e:
        raise StageError(name, e) from e


def run_link(config: ScenarioConfig, log_level: str = "INFO") -> SimReport:
    """PRBS -> NRZ -> tx Bessel -> MZM -> FSO channel -> APD -> rx Bessel -> eye analysis.

    Solvers and sweeps pass ``log_level="DEBUG"`` to keep the per-run summary out of INFO output.
    """
    _dt = time.perf_counter()
    tx_filter = FilterSpec(order=FILTER_ORDER, cutoff_hz=config.tx_cutoff_factor * config.bit_rate_hz)
    rx_filter = FilterSpec(order=FILTER_ORDER, cutoff_hz=config.receiver_cutoff_factor * config.bit_rate_hz)

    with stage("prbs"):
        bits = prbs_generate(config.prbs_order, config.prbs_seed, config.sequence_length_bits)
    with stage("nrz"):
        drive = nrz_encode(bits, config.samples_per_bit, bit_rate=config.bit_rate_hz)
    if config.filters_enabled:
        with stage("tx-filter"):
            drive = bessel_lowpass(drive, tx_filter)
    with stage("laser"):
        carrier = cw_laser(config.laser, len(drive), drive.sample_rate)
    with stage("modulator"):
        modulated = mzm_modulate(carrier, drive, config.modulator)
    with stage("channel"):
        received, loss = apply_channel(modulated, config.channel)
    with stage("apd"):
        current = apd_detect(received, config.apd, config.noise)
    if config.filters_enabled:
        with stage("rx-filter"):
            current = receive_filter(current, config.bit_rate_hz, config.receiver_cutoff_factor)
            # filtering is circular, so removing the group delay is an exact roll
            delay = group_delay_s(tx_filter) + group_delay_s(rx_filter)
            shift = int(round(delay * current.sample_rate))
            current = current.with_samples(np.roll(current.samples, -shift))
    with stage("eye"):
        eye = eye_fold(current, config.samples_per_bit, bits)
        metrics = eye_metrics(eye)
        errors, counted = count_bit_errors(eye, metrics)
    with stage("budget"):
        # dB domain: very long fades underflow the linear power to 0 W
        modulated_power_dbm = watts_to_dbm(modulated.mean_power_w)
        received_power_dbm = modulated_power_dbm - loss.total_db
        modulation_penalty_db = config.laser.power_dbm - modulated_power_dbm
        budget = build_link_budget(received_power_dbm, config.sensitivity_dbm)

    elapsed = time.perf_counter() - _dt
    logger.log(
        log_level,
        f"Preset[{config.preset or '-'}] Loss[{loss.total_db:.4f}dB] Pr[{received_power_dbm:.4f}dBm] "
        f"LM[{budget.link_margin_db:.4f}dB] Q[{metrics.q_factor:.4f}] BER[{metrics.ber_estimate:.4e}] "
        f"Errors[{errors}/{counted}] Elps[{elapsed:.3f}s]"
    )
    return SimReport(
        config=config,
        loss=loss,
        received_power_dbm=received_power_dbm,
        modulation_penalty_db=modulation_penalty_db,
        budget=budget,
        eye=metrics,
        counted_errors=errors,
        counted_bits=counted,
        elapsed_s=elapsed,
        eye_diagram=eye,
    )
