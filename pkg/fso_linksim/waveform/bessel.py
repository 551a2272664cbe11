"""
Bessel low-pass filtering in the frequency domain.

The analog prototype is H(s) = theta_n(0) / theta_n(s), theta_n being the
reversed Bessel polynomial (order 4: s^4 + 10 s^3 + 45 s^2 + 105 s + 105).
The frequency axis is scaled so that |H|^2 = 1/2 exactly at the cutoff.

The whole record is filtered as one block, so the filter wraps around
circularly at the record edges.
"""

from functools import lru_cache

import numpy as np
from loguru import logger
from scipy.optimize import bisect
from scipy.special import factorial

from fso_linksim.waveform.types import FilterSpec, SampledWaveform


def bessel_poly(order: int) -> np.ndarray:
    """Reversed Bessel polynomial coefficients, highest power first."""
    coeffs = []
    for k in range(order + 1):
        num = factorial(2 * order - k, exact=True)
        den = 2 ** (order - k) * factorial(k, exact=True) * factorial(order - k, exact=True)
        coeffs.append(num // den)
    # coeffs[k] multiplies s^k
    return np.array(coeffs[::-1], dtype=np.float64)


def _prototype_response(order: int, x: np.ndarray | float) -> np.ndarray:
    poly = bessel_poly(order)
    return poly[-1] / np.polyval(poly, 1j * np.asarray(x, dtype=np.float64))


@lru_cache(maxsize=None)
def cutoff_scale(order: int) -> float:
    """Normalized frequency where the prototype is 3 dB down."""
    return bisect(
        lambda x: float(np.abs(_prototype_response(order, x)) ** 2) - 0.5,
        1e-9,
        1e3,
        xtol=1e-15,
        maxiter=500,
    )


def frequency_response(spec: FilterSpec, freqs_hz: np.ndarray) -> np.ndarray:
    """Complex H(j 2 pi f) for the given filter."""
    x = cutoff_scale(spec.order) * np.asarray(freqs_hz, dtype=np.float64) / spec.cutoff_hz
    return _prototype_response(spec.order, x)


def group_delay_s(spec: FilterSpec) -> float:
    """Group delay at DC."""
    poly = bessel_poly(spec.order)
    return float(poly[-2] / poly[-1] * cutoff_scale(spec.order) / (2 * np.pi * spec.cutoff_hz))


def bessel_lowpass(wave: SampledWaveform, spec: FilterSpec) -> SampledWaveform:
    nyquist = wave.sample_rate / 2
    if spec.cutoff_hz >= nyquist:
        raise ValueError(f"cutoff {spec.cutoff_hz:.6g} Hz is not below Nyquist {nyquist:.6g} Hz")
    n = len(wave)
    freqs = np.fft.rfftfreq(n, d=1.0 / wave.sample_rate)
    spectrum = np.fft.rfft(wave.samples) * frequency_response(spec, freqs)
    logger.debug(f"Bessel[order={spec.order}] Cutoff[{spec.cutoff_hz:.4g}Hz] N[{n}]")
    return wave.with_samples(np.fft.irfft(spectrum, n=n))
