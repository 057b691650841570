# Experiment files, the initial-condition mini-language and the batch runner
from src.experiments.describe import describe_experiment
from src.experiments.ic_parser import TrigSum, parse_initial_condition
from src.experiments.runner import ExperimentRunner
from src.experiments.schema import EXPERIMENT_KINDS, ExperimentConfig, load_config, parse_config

__all__ = [
    "describe_experiment",
    "TrigSum",
    "parse_initial_condition",
    "ExperimentRunner",
    "EXPERIMENT_KINDS",
    "ExperimentConfig",
    "load_config",
    "parse_config",
]
