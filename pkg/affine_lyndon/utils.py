import os
from typing import Optional

import yaml
from mergedeep import merge

from affine_lyndon.config import DEFAULTS_FILE
from affine_lyndon.models import RunConfig


def unflatten(flat_dict: dict) -> dict:
    """
    Converts a flat dictionary with dotted keys into a nested dictionary.

    Parameters:
        flat_dict: A flat dictionary whose keys may contain dots ('.').

    Returns:
        dict: A nested dictionary with the dotted keys expanded.
    """

    def dotsplit(key: str, value):
        keys = key.split(".")
        if len(keys) == 1:
            return {key: value}
        return {keys[0]: dotsplit(".".join(keys[1:]), value)}

    unflattened = {}
    for k, v in flat_dict.items():
        merge(unflattened, dotsplit(k, v))

    return unflattened


def load_yaml(path: str) -> dict:
    """
    Raises:
        FileNotFoundError: If the file does not exist.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file {path} was not found.")
    with open(path) as file:
        return yaml.safe_load(file) or {}


def load_defaults(path: Optional[str] = None) -> dict:
    """
    Read config defaults, unwrapping the `key: {value: X}` layout.
    """
    raw = load_yaml(path or DEFAULTS_FILE)
    return {
        key: entry["value"] if isinstance(entry, dict) and "value" in entry else entry
        for key, entry in raw.items()
    }


def parse_order(order) -> list:
    """
    Accept "1,2,0", "1<2<0", a tuple or a list and return a list of letters.
    """
    if isinstance(order, str):
        separator = "<" if "<" in order else ","
        return [int(x) for x in order.split(separator) if x.strip()]
    return [int(x) for x in order]


def load_config(path: Optional[str] = None, **overrides) -> RunConfig:
    """
    Merge CLI overrides into the defaults file and validate the result.

    Parameters:
        path: Defaults file; ASLW_DEFAULTS_FILE or config-defaults.yaml if omitted.
        overrides: Flat or dotted keys (e.g. "system.rank") with None meaning unset.

    Returns:
        RunConfig: The validated run configuration.

    Raises:
        FileNotFoundError: If the defaults file is missing.
        pydantic.ValidationError: If the merged values are invalid.
    """
    config = load_defaults(path)
    given = unflatten({k: v for k, v in overrides.items() if v is not None})
    system = given.get("system", {})
    if "order" in system:
        system["order"] = parse_order(system["order"])
    if "rank" in system and "order" not in system:
        system["order"] = list(range(int(system["rank"]) + 1))
    merge(config, given)
    return RunConfig.model_validate(config)
