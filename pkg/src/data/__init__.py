"""Experiment configuration loading."""

from .config import CONFIG_KEYS, COVERAGE_MODES, PLANNERS, ExperimentConfig, load_experiment_config, parse_bool

__all__ = [
    "CONFIG_KEYS",
    "COVERAGE_MODES",
    "PLANNERS",
    "ExperimentConfig",
    "load_experiment_config",
    "parse_bool",
]
