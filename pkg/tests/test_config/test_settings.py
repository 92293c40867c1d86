from config.settings import Settings, settings
from utils.config_loader import default_bounds


def test_settings_read_prefixed_variables(monkeypatch):
    monkeypatch.setenv("GWS_MAX_LEN", "9")
    monkeypatch.setenv("GWS_LOG_LEVEL", "DEBUG")
    fresh = Settings(_env_file=None)
    assert fresh.MAX_LEN == 9
    assert fresh.LOG_LEVEL == "DEBUG"
    assert fresh.MAX_STEPS == 200


def test_settings_names_are_case_sensitive(monkeypatch):
    monkeypatch.delenv("GWS_MAX_LEN", raising=False)
    monkeypatch.setenv("gws_max_len", "9")
    assert Settings(_env_file=None).MAX_LEN == 16
    assert Settings.model_config["env_prefix"] == "GWS_"


def test_default_bounds_follow_settings(monkeypatch):
    monkeypatch.setattr(settings, "MAX_STEPS", 77)
    assert default_bounds().max_steps == 77
    assert default_bounds(max_steps=5).max_steps == 5
    assert default_bounds(max_len=None).max_len == settings.MAX_LEN
