import math

import numpy as np
import pytest

from fso_linksim.metrics.eye import (
    EyeDiagram,
    ber_from_q,
    count_bit_errors,
    decision_threshold,
    eye_fold,
    eye_metrics,
)
from fso_linksim.waveform.nrz import nrz_encode
from fso_linksim.waveform.prbs import prbs_generate
from fso_linksim.waveform.types import BitSequence


def gaussian_eye(n_bits: int, spb: int, sigma: float, seed: int = 0) -> EyeDiagram:
    """Two-level eye whose noise is constant over each bit, so every phase sees the same statistics."""
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, n_bits + 1).astype(np.uint8)
    levels = labels + sigma * rng.standard_normal(n_bits + 1)
    samples = np.repeat(levels, spb)
    traces = np.lib.stride_tricks.sliding_window_view(samples, 2 * spb)[::spb]
    return EyeDiagram(traces=traces, labels=labels[:-1], samples_per_ui=spb)


def test_fold_shapes():
    wave = nrz_encode(BitSequence(np.array([1, 0, 1, 1])), 64)
    eye = eye_fold(wave, 64, BitSequence(np.array([1, 0, 1, 1])))
    assert eye.traces.shape == (3, 128)
    assert eye.labels.tolist() == [1, 0, 1]


def test_fold_ideal_nrz_traces_follow_bits():
    bits = prbs_generate(7, 1, 32)
    eye = eye_fold(nrz_encode(bits, 8), 8, bits)
    for k, trace in enumerate(eye.traces):
        np.testing.assert_array_equal(trace[:8], bits.bits[k])
        np.testing.assert_array_equal(trace[8:], bits.bits[k + 1])


def test_fold_length_mismatch():
    bits = prbs_generate(7, 1, 16)
    with pytest.raises(ValueError, match="expected 16 bits"):
        eye_fold(nrz_encode(bits, 8), 4, bits)


def test_noiseless_eye_reports_sentinel():
    bits = prbs_generate(7, 1, 128)
    metrics = eye_metrics(eye_fold(nrz_encode(bits, 8), 8, bits))
    assert math.isinf(metrics.q_factor) and metrics.q_factor > 0
    assert metrics.ber_estimate == 0.0
    # all phases tie, the UI center wins
    assert metrics.sampling_phase == pytest.approx(0.5)
    assert metrics.eye_height == pytest.approx(1.0)


def test_gaussian_eye_q():
    metrics = eye_metrics(gaussian_eye(5000, 4, 0.05))
    assert metrics.q_factor == pytest.approx(10.0, abs=0.5)
    assert metrics.mu1 == pytest.approx(1.0, abs=0.01)
    assert metrics.mu0 == pytest.approx(0.0, abs=0.01)
    assert metrics.ber_estimate < 1e-20


def test_q_is_invariant_under_affine_maps():
    eye = gaussian_eye(2000, 4, 0.1, seed=3)
    scaled = EyeDiagram(traces=3.5 * eye.traces - 2.0, labels=eye.labels, samples_per_ui=4)
    assert eye_metrics(scaled).q_factor == pytest.approx(eye_metrics(eye).q_factor, rel=1e-9)


def test_degenerate_pattern():
    ones = BitSequence(np.ones(8, dtype=np.uint8))
    with pytest.raises(ValueError, match="degenerate pattern"):
        eye_metrics(eye_fold(nrz_encode(ones, 4), 4, ones))


@pytest.mark.parametrize("q, ber", [(6.0, 9.87e-10), (7.0, 1.28e-12)])
def test_ber_from_q(q, ber):
    assert ber_from_q(q) == pytest.approx(ber, rel=0.01)


def test_ber_from_q_edges():
    assert ber_from_q(0.0) == 0.5
    assert ber_from_q(math.inf) == 0.0
    with pytest.raises(ValueError):
        ber_from_q(-1.0)


def test_decision_threshold_weights_by_spread():
    metrics = eye_metrics(gaussian_eye(3000, 2, 0.1, seed=5))
    threshold = decision_threshold(metrics)
    assert metrics.mu0 < threshold < metrics.mu1


def test_count_bit_errors_clean_eye():
    bits = prbs_generate(9, 5, 400)
    eye = eye_fold(nrz_encode(bits, 4), 4, bits)
    assert count_bit_errors(eye, eye_metrics(eye)) == (0, 399)


def test_count_bit_errors_noisy_eye():
    eye = gaussian_eye(20000, 2, 0.25, seed=11)
    metrics = eye_metrics(eye)
    errors, counted = count_bit_errors(eye, metrics)
    assert counted == 20000
    # Q is about 2, so a few hundred errors are expected
    assert errors / counted == pytest.approx(metrics.ber_estimate, rel=0.3)


def test_ber_from_q_strictly_decreases():
    bers = np.array([ber_from_q(q) for q in np.linspace(0.0, 10.0, 200)])
    assert (np.diff(bers) < 0).all()
