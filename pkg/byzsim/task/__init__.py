from .init import Initialization, init_model
from .train import Training, train_local
from .train_adversarial import BackdoorTraining
from .score import Scoring, evaluate
from .export import Exportation, write_results, write_sweep, CSV_HEADER, SWEEP_HEADER


__all__ = [
    "Initialization",
    "Training",
    "BackdoorTraining",
    "Scoring",
    "Exportation",
    "init_model",
    "train_local",
    "evaluate",
    "write_results",
    "write_sweep",
    "CSV_HEADER",
    "SWEEP_HEADER",
]
