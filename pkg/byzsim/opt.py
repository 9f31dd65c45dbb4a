""" Optimization methods. """

from dataclasses import dataclass

import numpy as np

from .apps.mlp import flatten, unflatten
from .com import ConfigurationError, ShapeError


@dataclass(frozen=True)
class TrainingConfig:
    """ Local-training hyperparameters shared by all workers. """
    learning_rate: float = 0.1
    momentum: float = 0.9
    l2_weight: float = 1e-4
    batch_size: int = 83
    epochs: int = 1

    def validate(self):
        if not self.learning_rate > 0:
            raise ConfigurationError("`learning_rate` should be positive, got %r." % self.learning_rate)
        if not 0 <= self.momentum < 1:
            raise ConfigurationError("`momentum` should lie in [0, 1), got %r." % self.momentum)
        if not self.l2_weight >= 0:
            raise ConfigurationError("`l2_weight` should be non-negative, got %r." % self.l2_weight)
        if int(self.batch_size) < 1:
            raise ConfigurationError("`batch_size` should be a positive integer, got %r." % self.batch_size)
        if int(self.epochs) < 0:
            raise ConfigurationError("`epochs` should be a non-negative integer, got %r." % self.epochs)
        return self


class Optimizer:
    """ Heavy-ball momentum SGD over flat parameter vectors.

    velocity <- momentum * velocity + gradient
    params   <- params - learning_rate * velocity
    """

    def __init__(self, learning_rate=0.1, momentum=0.9):
        self.learning_rate = learning_rate
        self.momentum = momentum

    def apply_gradients(self, params, gradient, velocity):
        """ Returns updated (params, velocity); inputs are not modified. """
        if not (params.shape == gradient.shape == velocity.shape):
            raise ShapeError(
                "Parameters, gradient and velocity should share one length, got %s, %s and %s."
                % (params.shape, gradient.shape, velocity.shape)
            )
        next_velocity = self.momentum * velocity + gradient
        next_params = params - self.learning_rate * next_velocity
        return next_params, next_velocity


def get_optimizer(config):
    return Optimizer(learning_rate=config.learning_rate, momentum=config.momentum)


def sgd_step(model, gradient, velocity, config):
    """ One momentum step on an `MLP`.

    Args:
        model: MLP.
        gradient: flat vector of length d.
        velocity: flat vector of length d.
        config: TrainingConfig.
    Returns:
        (updated MLP, updated velocity)
    """
    gradient = np.asarray(gradient, dtype=np.float64)
    velocity = np.asarray(velocity, dtype=np.float64)
    params, velocity = get_optimizer(config).apply_gradients(flatten(model), gradient, velocity)
    return unflatten(params, model.layer_sizes), velocity
