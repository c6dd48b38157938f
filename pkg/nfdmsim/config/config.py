from __future__ import annotations

import copy
import json
import logging
import os
from typing import Any, Iterable, Optional

import importlib_resources

from nfdmsim.errors import ConfigError
from nfdmsim.framing import SystemConfig

logger = logging.getLogger(__name__)

SECTIONS = ("system", "sweep")
SWEEP_KEYS = ("powers_dbm", "Nb_values", "receivers", "target_bit_errors", "max_frames")
RECEIVERS = ("fnft", "df-bnft", "edc", "dbp")


def read_config(path: Optional[str] = None) -> dict:
    """The packaged desk-scale profile, or the JSON document at `path`."""
    if path is None:
        my_resources = importlib_resources.files("nfdmsim")
        raw = my_resources.joinpath("config", "config.json").read_bytes()
        source = "package:nfdmsim/config/config.json"
    else:
        if not os.path.exists(path):
            raise ConfigError([f"{path}: no such file"])
        with open(path, "rb") as f:
            raw = f.read()
        source = path

    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ConfigError([f"{source}:{e.lineno}:{e.colno}: {e.msg}"]) from e
    if not isinstance(data, dict):
        raise ConfigError([f"{source}: top level must be an object"])
    for section in SECTIONS:
        data.setdefault(section, {})
    logger.debug("config.read", extra={"source": source})
    return data


def _parse_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(conf: dict, overrides: Iterable[str]) -> dict:
    """
    Apply `key=value` strings. A bare key is looked up in `system`, then
    `sweep`, then the top level; `section.key` addresses a section directly.
    Values are JSON, anything unparsable is taken as a string.
    """
    conf = copy.deepcopy(conf)
    problems: list[str] = []
    for item in overrides:
        key, sep, text = item.partition("=")
        key = key.strip()
        if not sep or not key:
            problems.append(f"--set {item!r}: expected key=value")
            continue
        value = _parse_value(text.strip())

        section, _, name = key.rpartition(".")
        if section:
            if section not in SECTIONS:
                problems.append(f"--set {key}: unknown section {section!r}")
                continue
            conf.setdefault(section, {})[name] = value
        elif name in SystemConfig.__dataclass_fields__:
            conf["system"][name] = value
        elif name in SWEEP_KEYS:
            conf["sweep"][name] = value
        elif name in conf and name not in SECTIONS:
            conf[name] = value
        else:
            problems.append(f"--set {key}: unknown parameter")
    if problems:
        raise ConfigError(problems)
    return conf


def load_system_config(conf: dict) -> SystemConfig:
    return SystemConfig.from_dict(conf.get("system", {}))


def validate_sweep(conf: dict) -> dict:
    """Checked copy of the sweep section with every problem reported at once."""
    sweep = dict(conf.get("sweep", {}))
    problems: list[str] = []
    for key in sweep:
        if key not in SWEEP_KEYS:
            problems.append(f"sweep.{key}: unknown parameter")

    powers = sweep.get("powers_dbm", [])
    if not isinstance(powers, list) or not powers or not all(isinstance(p, (int, float)) for p in powers):
        problems.append(f"sweep.powers_dbm: expected a non-empty list of numbers, got {powers!r}")
    nbs = sweep.get("Nb_values", [])
    if not isinstance(nbs, list) or not nbs or not all(isinstance(n, int) and n >= 1 for n in nbs):
        problems.append(f"sweep.Nb_values: expected a non-empty list of positive integers, got {nbs!r}")
    receivers = sweep.get("receivers", list(RECEIVERS))
    if not isinstance(receivers, list) or not receivers or any(r not in RECEIVERS for r in receivers):
        problems.append(f"sweep.receivers: expected a subset of {list(RECEIVERS)}, got {receivers!r}")
    for key, default in (("target_bit_errors", 100), ("max_frames", 1000)):
        value = sweep.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            problems.append(f"sweep.{key}: expected a positive integer, got {value!r}")
        sweep[key] = value
    if problems:
        raise ConfigError(problems)
    sweep["receivers"] = receivers
    return sweep
