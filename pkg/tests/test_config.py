import json
import logging

import pytest

from nfdmsim.config import apply_overrides, load_system_config, read_config, validate_sweep
from nfdmsim.config.logging_config import ContextFilter, JsonFormatter, set_log_context
from nfdmsim.errors import ConfigError


def test_packaged_profile_is_valid():
    conf = read_config()
    cfg = load_system_config(conf)
    assert cfg.L == 400e3 and cfg.Ng == 600 and cfg.samples_per_symbol == 16
    sweep = validate_sweep(conf)
    assert sweep["powers_dbm"] == list(range(-8, 1))
    assert sweep["Nb_values"] == [8, 16, 32, 64]
    assert sweep["receivers"] == ["fnft", "df-bnft", "edc", "dbp"]
    assert sweep["target_bit_errors"] == 100


def test_overrides_resolve_sections():
    conf = apply_overrides(
        read_config(),
        ["noise_on=false", "Nb=8", "target_bit_errors=10", "parallel=false", "sweep.receivers=[\"fnft\"]"],
    )
    assert conf["system"]["noise_on"] is False
    assert conf["system"]["Nb"] == 8
    assert conf["sweep"]["target_bit_errors"] == 10
    assert conf["sweep"]["receivers"] == ["fnft"]
    assert conf["parallel"] is False
    assert load_system_config(conf).noise_on is False


def test_overrides_do_not_touch_the_input():
    conf = read_config()
    apply_overrides(conf, ["Nb=8"])
    assert conf["system"]["Nb"] == 16


def test_override_values_fall_back_to_strings():
    conf = apply_overrides(read_config(), ["sweep.receivers=fnft"])
    with pytest.raises(ConfigError):
        validate_sweep(conf)


def test_bad_overrides_are_all_reported():
    with pytest.raises(ConfigError) as e:
        apply_overrides(read_config(), ["bogus=1", "novalue", "other.Nb=3"])
    assert len(e.value.diagnostics) == 3


def test_read_config_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "system": {"Nb": 8,}\n}')
    with pytest.raises(ConfigError) as e:
        read_config(str(path))
    assert e.value.diagnostics[0].startswith(f"{path}:2:")


def test_read_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        read_config(str(tmp_path / "nope.json"))


def test_invalid_system_values_fail_validation(tmp_path):
    path = tmp_path / "conf.json"
    path.write_text(json.dumps({"system": {"Ng": 3, "gamma": -1}, "sweep": {}}))
    with pytest.raises(ConfigError) as e:
        load_system_config(read_config(str(path)))
    assert len(e.value.diagnostics) == 2


def test_sweep_validation():
    with pytest.raises(ConfigError) as e:
        validate_sweep({"sweep": {"powers_dbm": [], "Nb_values": [0], "receivers": ["viterbi"], "max_frames": 0}})
    assert len(e.value.diagnostics) == 4


def test_json_log_lines_carry_context_and_extras():
    set_log_context(run_id="run-1", component="nfdm", mode="run")
    record = logging.LogRecord("nfdmsim.test", logging.INFO, __file__, 1, "sim.cell.done", None, None)
    record.Nb = 16
    record.bit_errors = 3
    ContextFilter().filter(record)
    payload = json.loads(JsonFormatter().format(record))
    assert payload["event"] == "sim.cell.done"
    assert payload["run_id"] == "run-1"
    assert payload["component"] == "nfdm"
    assert payload["Nb"] == 16 and payload["bit_errors"] == 3
    assert "lineno" not in payload
