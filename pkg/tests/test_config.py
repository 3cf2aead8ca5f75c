import json

import pytest

import config


def test_defaults_when_file_missing(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "CONFIG_FILE", str(tmp_path / "absent.json"))
    assert config.get_setting("jobs") == 1
    assert config.get_setting("report.schema") == "ternary-dht/1"
    assert config.get_setting("report.missing", "fallback") == "fallback"


def test_file_values_override_defaults(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"jobs": 6, "report": {"include_timing": True}}))
    monkeypatch.setattr(config, "CONFIG_FILE", str(path))
    loaded = config.load_config()
    assert loaded["jobs"] == 6
    assert loaded["report"] == {"schema": "ternary-dht/1", "include_timing": True}
    assert loaded["tolerance"] == 1e-6


def test_max_degree_setting_caps_field_size(tmp_path, monkeypatch):
    from field import FieldSizeError, build_field

    path = tmp_path / "config.json"
    path.write_text(json.dumps({"max_degree": 4}))
    monkeypatch.setattr(config, "CONFIG_FILE", str(path))
    assert build_field(4).q == 81
    with pytest.raises(FieldSizeError):
        build_field(5)
