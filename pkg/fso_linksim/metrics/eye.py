"""
Eye folding and Q-factor / BER estimation.

Trace k spans bits k and k+1 (two unit intervals) and is labeled with bit k,
the transmitted bit (genie-aided classification). Candidate sampling phases
are the samples of the first unit interval.
"""

import math
from dataclasses import dataclass

import numpy as np
from loguru import logger
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import erfc

from fso_linksim.config import Q_SENTINEL
from fso_linksim.waveform.types import BitSequence, SampledWaveform, Unit


@dataclass(frozen=True, eq=False)
class EyeDiagram:
    traces: np.ndarray  # shape (bit count - 1, 2 * samples_per_ui)
    labels: np.ndarray
    samples_per_ui: int
    unit: Unit = "ampere"

    @property
    def trace_count(self) -> int:
        return int(self.traces.shape[0])


@dataclass(frozen=True)
class EyeMetrics:
    mu1: float
    mu0: float
    sigma1: float
    sigma0: float
    q_factor: float
    ber_estimate: float
    eye_height: float
    sampling_phase: float


def ber_from_q(q: float) -> float:
    if q < 0:
        raise ValueError(f"Q must be >= 0, got {q}")
    return float(0.5 * erfc(q / math.sqrt(2)))


def eye_fold(wave: SampledWaveform, samples_per_bit: int, bits: BitSequence) -> EyeDiagram:
    if len(wave) != bits.length * samples_per_bit:
        raise ValueError(
            f"waveform has {len(wave)} samples, expected {bits.length} bits x {samples_per_bit} samples"
        )
    if bits.length < 2:
        raise ValueError("eye folding needs at least 2 bits")
    traces = sliding_window_view(wave.samples, 2 * samples_per_bit)[::samples_per_bit]
    return EyeDiagram(traces=traces, labels=bits.bits[:-1], samples_per_ui=samples_per_bit, unit=wave.unit)


def _q_per_phase(mu1: np.ndarray, mu0: np.ndarray, sigma1: np.ndarray, sigma0: np.ndarray) -> np.ndarray:
    spread = sigma1 + sigma0
    opening = mu1 - mu0
    with np.errstate(divide="ignore", invalid="ignore"):
        q = opening / spread
    # zero spread: the sign of the opening decides
    return np.where(spread > 0, q, np.sign(opening) * Q_SENTINEL)


def eye_metrics(eye: EyeDiagram) -> EyeMetrics:
    spui = eye.samples_per_ui
    first_ui = eye.traces[:, :spui]
    ones = first_ui[eye.labels == 1]
    zeros = first_ui[eye.labels == 0]
    if len(ones) == 0 or len(zeros) == 0:
        raise ValueError("degenerate pattern")
    if len(ones) < 2 or len(zeros) < 2:
        raise ValueError("degenerate pattern: need at least 2 traces of each bit class")

    mu1, mu0 = ones.mean(axis=0), zeros.mean(axis=0)
    sigma1, sigma0 = ones.std(axis=0), zeros.std(axis=0)
    q = np.nan_to_num(_q_per_phase(mu1, mu0, sigma1, sigma0), nan=0.0, posinf=np.inf, neginf=-np.inf)

    # among equally good phases take the one nearest the UI center
    best = np.flatnonzero(q == q.max())
    idx = int(best[np.argmin(np.abs(best - spui / 2))])

    q_best = float(q[idx])
    metrics = EyeMetrics(
        mu1=float(mu1[idx]),
        mu0=float(mu0[idx]),
        sigma1=float(sigma1[idx]),
        sigma0=float(sigma0[idx]),
        q_factor=q_best,
        ber_estimate=ber_from_q(max(q_best, 0.0)),
        eye_height=float((mu1[idx] - 3 * sigma1[idx]) - (mu0[idx] + 3 * sigma0[idx])),
        sampling_phase=idx / spui,
    )
    logger.debug(f"Eye Traces[{eye.trace_count}] Phase[{metrics.sampling_phase:.4f}] Q[{q_best:.4f}]")
    return metrics


def decision_threshold(metrics: EyeMetrics) -> float:
    spread = metrics.sigma0 + metrics.sigma1
    if spread == 0:
        return (metrics.mu1 + metrics.mu0) / 2
    return (metrics.sigma0 * metrics.mu1 + metrics.sigma1 * metrics.mu0) / spread


def count_bit_errors(eye: EyeDiagram, metrics: EyeMetrics) -> tuple[int, int]:
    """Decide every trace at the chosen phase and count mismatches with the sent bits."""
    idx = int(round(metrics.sampling_phase * eye.samples_per_ui))
    decisions = (eye.traces[:, idx] > decision_threshold(metrics)).astype(np.uint8)
    errors = int(np.count_nonzero(decisions != eye.labels))
    return errors, eye.trace_count
