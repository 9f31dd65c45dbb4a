import numpy as np

from ..apps import MLP
from ..apps.util import uniform_fan_in_initializer
from ..com import ShapeError, logger
from ._base_ import Task


class Initialization(Task):
    """ Initialize an MLP of the given layer sizes, make it ready for training. """

    def run(self, seed):
        layer_sizes = [int(size) for size in self.module]
        if len(layer_sizes) < 2 or min(layer_sizes) < 1:
            raise ShapeError("`layer_sizes` needs at least 2 positive sizes, got %s." % layer_sizes)

        rng = np.random.default_rng(seed)
        weights, biases = [], []
        for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
            weights.append(uniform_fan_in_initializer(rng, fan_in, fan_out))
            biases.append(np.zeros(fan_out, dtype=np.float64))
        model = MLP(layer_sizes, weights, biases)

        logger.info("Initialized MLP %s with %d parameters", "-".join(map(str, layer_sizes)), model.n_params)
        return model


def init_model(layer_sizes, seed):
    """ MLP with weights uniform in +-1/sqrt(fan_in) and zero biases. """
    return Initialization(layer_sizes).run(seed)
