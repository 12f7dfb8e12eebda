from .config import ExperimentConfig
from .experiment import CSV_HEADER, run_experiment
from .persist import load_network, save_network
from .plot import emit_plot
from .report import speedup_report

__all__ = [
    "CSV_HEADER",
    "ExperimentConfig",
    "emit_plot",
    "load_network",
    "run_experiment",
    "save_network",
    "speedup_report",
]
