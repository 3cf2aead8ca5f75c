"""
Configuration module for the ternary DHT toolkit
Loads config.json with built-in defaults for worker count, seeds and tolerances
"""

import json
import os
from typing import Any, Dict

CONFIG_FILE = os.environ.get("TERNARY_DHT_CONFIG", "config.json")

DEFAULT_CONFIG: Dict[str, Any] = {
    "jobs": 1,
    "seed": 20140601,
    "tolerance": 1e-6,
    "lemma_samples": 100000,
    "exhaustive_lemma_max_n": 8,
    "max_degree": 19,
    "quiet": False,
    "report": {"schema": "ternary-dht/1", "include_timing": False},
    "sequence_dir": "sequences",
}


def load_config() -> Dict[str, Any]:
    """Load configuration from config.json, falling back to defaults for missing keys"""
    config = json.loads(json.dumps(DEFAULT_CONFIG))
    if not os.path.exists(CONFIG_FILE):
        return config

    with open(CONFIG_FILE, "r") as f:
        loaded = json.load(f)

    for key, value in loaded.items():
        if isinstance(value, dict) and isinstance(config.get(key), dict):
            config[key].update(value)
        else:
            config[key] = value
    return config


def get_setting(key: str, default: Any = None) -> Any:
    """Dotted lookup, e.g. get_setting("report.schema")"""
    node: Any = load_config()
    for part in key.split("."):
        if not isinstance(node, dict) or part not in node:
            return default
        node = node[part]
    return node


if __name__ == "__main__":
    print(json.dumps(load_config(), indent=2))
