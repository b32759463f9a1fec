"""Python access to the swarmsim simulator core."""

import json

try:
    from . import _core
except ImportError:
    import _core

ConfigError = _core.ConfigError
builtin_scenario_names = _core.builtin_scenario_names
scenario_text = _core.scenario_text
run_csv = _core.run_csv
parse_blobs = _core.parse_blobs
terminal_speed = _core.terminal_speed


def run_metrics(scenario, seed=0, variant=""):
    """Metrics of one simulated seed, keyed by follower id."""
    return json.loads(_core.run_metrics_json(scenario, seed, variant))


__all__ = [
    "ConfigError",
    "builtin_scenario_names",
    "parse_blobs",
    "run_csv",
    "run_metrics",
    "scenario_text",
    "terminal_speed",
]
