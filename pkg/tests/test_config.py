from pathlib import Path

import pytest
import yaml

from core.config import (
    LimitsConfig,
    ToriCountConfig,
    get_config,
    reload_config,
    reset_config,
    set_config,
)
from tori.errors import InputError


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults():
    config = ToriCountConfig()
    assert config.limits.max_field_bits == 24
    assert config.limits.max_points == 10 ** 9
    assert config.limits.minima_dim_cap == 6
    assert config.numerics.lang_weil_slack == 1.5
    assert config.report.indent == 2 and config.report.sort_keys


def test_load_yaml(tmp_path):
    path = _write(tmp_path / "c.yaml", "limits:\n  max_field_bits: 12\nnumerics:\n  lang_weil_slack: 2.0\n")
    config = ToriCountConfig.load(path)
    assert config.limits.max_field_bits == 12
    assert config.limits.max_points == 10 ** 9
    assert config.numerics.lang_weil_slack == 2.0


def test_empty_file_gives_defaults(tmp_path):
    assert ToriCountConfig.load(_write(tmp_path / "c.yaml", "")) == ToriCountConfig()


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = _write(tmp_path / "c.yaml", "limits:\n  max_field_bits: 12\n")
    monkeypatch.setenv("TORICOUNT_MAX_FIELD_BITS", "16")
    monkeypatch.setenv("TORICOUNT_MINIMA_DIM_CAP", "4")
    config = ToriCountConfig.load(path)
    assert config.limits.max_field_bits == 16
    assert config.limits.minima_dim_cap == 4


def test_non_integer_override(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("TORICOUNT_MAX_POINTS", "lots")
    with pytest.raises(InputError):
        ToriCountConfig.load()


@pytest.mark.parametrize(
    "text",
    ["limits: [1, 2\n", "- 1\n- 2\n", "limits:\n  max_bits: 3\n"],
    ids=["bad-yaml", "not-a-mapping", "unknown-limit"],
)
def test_invalid_files(tmp_path, text):
    with pytest.raises(InputError):
        ToriCountConfig.load(_write(tmp_path / "c.yaml", text))


def test_unknown_sections_are_ignored(tmp_path):
    assert ToriCountConfig.load(_write(tmp_path / "c.yaml", "colour: blue\n")) == ToriCountConfig()


def test_missing_explicit_path(tmp_path):
    with pytest.raises(FileNotFoundError):
        ToriCountConfig.load(tmp_path / "absent.yaml")


def test_discovery_order(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert ToriCountConfig.load() == ToriCountConfig()
    home = Path.home()
    _write(home / ".config" / "toricount" / "config.yaml", "limits:\n  max_points: 5\n")
    assert ToriCountConfig.load().limits.max_points == 5
    _write(home / ".toricount" / "config.yaml", "limits:\n  max_points: 6\n")
    assert ToriCountConfig.load().limits.max_points == 6
    _write(tmp_path / "config.yaml", "limits:\n  max_points: 7\n")
    assert ToriCountConfig.load().limits.max_points == 7
    _write(tmp_path / "toricount.yaml", "limits:\n  max_points: 8\n")
    assert ToriCountConfig.load().limits.max_points == 8


def test_with_overrides_ignores_none():
    config = ToriCountConfig().with_overrides(max_field_bits=10, max_points=None)
    assert config.limits.max_field_bits == 10
    assert config.limits.max_points == 10 ** 9
    assert ToriCountConfig().limits.max_field_bits == 24
    with pytest.raises(InputError):
        ToriCountConfig().with_overrides(max_widgets=3)


def test_save_and_load(tmp_path):
    config = ToriCountConfig(limits=LimitsConfig(max_field_bits=9, max_components=50))
    path = tmp_path / "nested" / "config.yaml"
    config.save(path)
    assert yaml.safe_load(path.read_text(encoding="utf-8"))["limits"]["max_field_bits"] == 9
    assert ToriCountConfig.load(path) == config


def test_save_defaults_to_home():
    ToriCountConfig().save()
    assert (Path.home() / ".toricount" / "config.yaml").exists()


def test_global_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    first = get_config()
    assert get_config() is first
    custom = ToriCountConfig(limits=LimitsConfig(max_points=3))
    assert set_config(custom) is custom
    assert get_config().limits.max_points == 3
    assert reset_config() == ToriCountConfig()
    path = _write(tmp_path / "c.yaml", "limits:\n  max_points: 4\n")
    assert reload_config(path).limits.max_points == 4
    assert get_config().limits.max_points == 4
    assert ToriCountConfig().to_dict()["limits"]["minima_vector_budget"] == 5_000_000
