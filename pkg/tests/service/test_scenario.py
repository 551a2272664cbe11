import pytest

from fso_linksim.errors import ConfigError
from fso_linksim.service.scenario import (
    ScenarioConfig,
    config_from_dict,
    load_config,
    resolve_config,
    save_config,
)


def test_defaults():
    config = ScenarioConfig()
    assert config.total_samples == 8192
    assert config.sample_rate_hz == pytest.approx(640e9)
    assert config.preset == "rain"
    assert config.channel.gamma_db_per_km == 6
    assert config.laser.power_dbm == 20
    assert config.noise.rng_seed == 42


def test_toml_round_trip(tmp_path):
    config = ScenarioConfig().with_preset("fog").with_seed(7)
    path = tmp_path / "scenario.toml"
    save_config(config, path)
    assert load_config(path) == config


def test_preset_with_channel_overrides():
    config = config_from_dict({"preset": "fog", "channel": {"range_km": 0.5}})
    assert config.channel.gamma_db_per_km == 100
    assert config.channel.range_km == 0.5
    assert config.channel.divergence_rad == 0.003


def test_missing_channel_falls_back_to_rain():
    config = config_from_dict({"samples_per_bit": 32})
    assert config.preset == "rain"
    assert config.samples_per_bit == 32


def test_cli_flags_override_file(tmp_path):
    path = tmp_path / "scenario.toml"
    save_config(ScenarioConfig().with_seed(1), path)
    config = resolve_config(config_path=path, preset_name="clear", seed=9, no_noise=True)
    assert config.preset == "clear"
    assert config.noise.rng_seed == 9
    assert not config.noise.enabled


@pytest.mark.parametrize(
    "data, match",
    [
        ({"bogus": 1}, "unknown config key"),
        ({"laser": {"colour": "red"}}, r"unknown key\(s\) in \[laser\]"),
        ({"preset": "snow"}, "Unknown weather preset"),
        ({"channel": {"gamma_db_per_km": -1, "range_km": 1}}, "gamma_db_per_km"),
        ({"samples_per_bit": 0}, "samples_per_bit"),
        ({"prbs_order": 8}, "prbs_order"),
        ({"apd": "fast"}, r"\[apd\] must be a table"),
    ],
)
def test_invalid_config(data, match):
    with pytest.raises(ConfigError, match=match):
        config_from_dict(data)


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError, match="cannot read config file"):
        load_config(tmp_path / "missing.toml")
    broken = tmp_path / "broken.toml"
    broken.write_text("laser = [")
    with pytest.raises(ConfigError, match="invalid TOML"):
        load_config(broken)


def test_with_preset_keeps_geometry():
    base = config_from_dict({"channel": {"gamma_db_per_km": 6, "range_km": 1, "rx_aperture_m": 0.3}})
    fog = base.with_preset("fog")
    assert fog.channel.rx_aperture_m == 0.3
    assert fog.channel.gamma_db_per_km == 100
    assert fog.preset == "fog"
