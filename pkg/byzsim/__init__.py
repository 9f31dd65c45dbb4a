__version__ = "v0.1.0"

from .core import Simulator
from .core import ExperimentConfig
from .core import DatasetSource
from .core import RoundRecord
from .core import run_experiment
from .core import run_sweep
from .com import restore_config
from .com import localize_config
from .com import set_verbosity
from .com import set_log
from .stats import compute_z_max
from .stats import per_dimension_stats
from .stats import standard_normal_cdf
from .stats import inverse_standard_normal_cdf

set_verbosity()

__all__ = [
    "Simulator",
    "ExperimentConfig",
    "DatasetSource",
    "RoundRecord",
    "run_experiment",
    "run_sweep",
    "restore_config",
    "localize_config",
    "set_verbosity",
    "set_log",
    "compute_z_max",
    "per_dimension_stats",
    "standard_normal_cdf",
    "inverse_standard_normal_cdf",
]
