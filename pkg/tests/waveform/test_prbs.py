import numpy as np
import pytest

from fso_linksim.config import PRBS_TAPS
from fso_linksim.waveform.prbs import parse_seed, prbs_generate


def test_prbs7_first_bits_from_unit_seed():
    seq = prbs_generate(7, "0000001", 16)
    # the single set bit walks up to the MSB before any 1 is emitted
    assert seq.bits[:6].tolist() == [0] * 6
    assert seq.bits[6] == 1


def test_prbs7_default_record_length():
    assert len(prbs_generate(7, 1, 128)) == 128


def test_prbs7_balance_over_one_period():
    bits = prbs_generate(7, "0000001", 127).bits
    assert int(bits.sum()) == 64
    assert int((bits == 0).sum()) == 63


@pytest.mark.parametrize("order", [7, 9, 11])
def test_prbs_period(order):
    period = (1 << order) - 1
    bits = prbs_generate(order, 1, 2 * period).bits
    np.testing.assert_array_equal(bits[:period], bits[period:])
    # maximal length: no shorter period divides the record
    assert not np.array_equal(bits[: period // 2], bits[period // 2 : 2 * (period // 2)])


def test_prbs_is_deterministic_and_seed_dependent():
    a = prbs_generate(15, 0x1234, 500).bits
    b = prbs_generate(15, 0x1234, 500).bits
    c = prbs_generate(15, 0x4321, 500).bits
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_prbs_zero_seed_is_degenerate():
    with pytest.raises(ValueError, match="degenerate LFSR seed"):
        prbs_generate(7, "0000000", 8)


def test_prbs_unsupported_order_lists_supported():
    with pytest.raises(ValueError, match=r"Unsupported PRBS order: 8\. Supported: \[7, 9, 11, 15, 23, 31\]"):
        prbs_generate(8, 1, 8)


def test_prbs_all_orders_have_taps():
    for order in PRBS_TAPS:
        assert prbs_generate(order, 1, 64).length == 64


def test_parse_seed():
    assert parse_seed("0000001", 7) == 1
    assert parse_seed("1_0000", 7) == 16
    assert parse_seed(5, 7) == 5
    with pytest.raises(ValueError):
        parse_seed("0102", 7)
    with pytest.raises(ValueError):
        parse_seed(128, 7)
    with pytest.raises(ValueError):
        parse_seed("11111111", 7)
