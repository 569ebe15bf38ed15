import io
from datetime import datetime

import numpy as np
import pytest
import yaml

from config.run_config import RunConfig, default_settings, load_run_config, load_settings, save_settings
from models.errors import InvalidConfig
from sampling.grid import Chart, GridSpec
from utils.formatting import format_timestamp, to_jsonable, write_rows_csv


def test_missing_settings_are_written_with_defaults(tmp_path):
    path = tmp_path / "settings.yml"
    settings = load_settings(path)
    assert settings == default_settings()
    assert yaml.safe_load(path.read_text(encoding="utf-8")) == default_settings()


@pytest.mark.parametrize("text", ["run: [unclosed", "- just\n- a list\n"])
def test_unreadable_settings_fall_back_to_defaults(tmp_path, text):
    path = tmp_path / "settings.yml"
    path.write_text(text, encoding="utf-8")
    assert load_settings(path) == default_settings()


def test_settings_round_trip(tmp_path):
    path = tmp_path / "settings.yml"
    settings = default_settings()
    settings["run"]["grid_n"] = 21
    settings["run"]["charts"] = ["inf"]
    save_settings(settings, path)
    cfg = load_run_config(path)
    assert cfg.grid == GridSpec(1.5, 21, (Chart.INFINITY,))


def test_overrides_take_precedence(tmp_path):
    cfg = load_run_config(tmp_path / "settings.yml", tol=1e-6, grid_n=15, jobs=None, format="csv")
    assert cfg.tol == 1e-6
    assert cfg.grid.samples == 15
    assert cfg.grid.half_width == 1.5
    assert cfg.jobs == 1
    assert cfg.format == "csv"


@pytest.mark.parametrize("overrides", [
    {"tol": 0.0},
    {"tol": 0.5},
    {"jobs": 0},
    {"format": "xml"},
    {"fd_step": 1e-9},
    {"fd_step": 0.1},
    {"grid_n": 5},
    {"grid_width": -1.0},
])
def test_invalid_run_configs(overrides):
    with pytest.raises(InvalidConfig):
        RunConfig().with_overrides(**overrides)


def test_bad_settings_values_are_invalid_config():
    with pytest.raises(InvalidConfig):
        RunConfig.from_dict({"grid_n": "many"})
    with pytest.raises(InvalidConfig):
        RunConfig.from_dict({"charts": ["north"]})


def test_run_config_report():
    data = RunConfig().to_dict()
    assert data == {
        "tol": 1e-7, "grid_n": 41, "grid_width": 1.5, "charts": ["0", "inf"],
        "fd_step": 1e-3, "format": "json", "jobs": 1,
    }


def test_jsonable_values():
    value = {"z": 1 + 2j, "n": np.int64(3), "x": np.float64(0.5), "v": np.array([1j, 2])}
    assert to_jsonable(value) == {"z": [1.0, 2.0], "n": 3, "x": 0.5, "v": [[0.0, 1.0], [2.0, 0.0]]}


def test_csv_rows():
    out = io.StringIO()
    write_rows_csv([{"a": 0.1, "b": None}, {"a": 2, "b": "inf"}], ("a", "b"), out)
    assert out.getvalue() == "a,b\n0.1,\n2,inf\n"


def test_timestamp_format():
    assert format_timestamp(datetime(2024, 6, 11, 9, 5, 3, 42000)) == "09:05:03.042"
