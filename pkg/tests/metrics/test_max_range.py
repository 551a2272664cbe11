import pytest
from loguru import logger

from fso_linksim.errors import UnreachableTargetError
from fso_linksim.metrics.max_range import max_range_for_q, q_at_range
from fso_linksim.service.scenario import ScenarioConfig


def test_q_is_non_increasing_in_range():
    config = ScenarioConfig()
    qs = [q_at_range(config, r) for r in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)]
    assert all(later <= earlier for earlier, later in zip(qs, qs[1:]))


def test_max_range_recovers_known_range():
    config = ScenarioConfig()
    target = q_at_range(config, 0.8)
    assert max_range_for_q(config, target) == pytest.approx(0.8, abs=0.001)


def test_max_range_unreachable_target():
    with pytest.raises(UnreachableTargetError, match="unreachable"):
        max_range_for_q(ScenarioConfig(), 1e9)


def test_max_range_rejects_non_positive_target():
    with pytest.raises(ValueError):
        max_range_for_q(ScenarioConfig(), 0)


def test_max_range_capped_at_search_limit():
    clear = ScenarioConfig().with_preset("clear")
    assert max_range_for_q(clear, 1e-3, max_km=2.0) == 2.0


def test_fog_reaches_less_far_than_rain():
    config = ScenarioConfig()
    rain_km = max_range_for_q(config.with_preset("rain"), 6.0)
    fog_km = max_range_for_q(config.with_preset("fog"), 6.0)
    assert 0.001 < fog_km < rain_km < 50.0


def test_bisection_steps_stay_below_info():
    messages = []
    sink_id = logger.add(messages.append, level="INFO", format="{message}")
    try:
        max_range_for_q(ScenarioConfig(), 6.0)
    finally:
        logger.remove(sink_id)
    assert not any("Errors[" in message for message in messages)
    assert sum("MaxRange[" in message for message in messages) == 1
