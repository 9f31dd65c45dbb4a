import numpy as np

from ..apps.mlp import backward, flatten
from ..com import InsufficientDataError, logger
from ..opt import TrainingConfig, sgd_step
from ._base_ import Task


class Training(Task):
    """ Simply train, in a common neural-network manner: shuffled mini-batches with momentum SGD. """

    def run(self, dataset, config=None, seed=0):
        config = (config or TrainingConfig()).validate()
        if not len(dataset):
            raise InsufficientDataError("0 input samples recognized.")

        model = self.module.copy()
        velocity = np.zeros(model.n_params, dtype=np.float64)
        rng = np.random.default_rng(seed)
        self.losses = []

        for _ in range(int(config.epochs)):
            order = rng.permutation(len(dataset))
            epoch_loss = 0.0
            for start in range(0, len(order), config.batch_size):
                batch_ids = order[start: start + config.batch_size]     # last batch may be short
                gradient, loss = backward(
                    model, dataset.inputs[batch_ids], dataset.labels[batch_ids], l2_weight=config.l2_weight,
                )
                model, velocity = sgd_step(model, gradient, velocity, config)
                epoch_loss += loss * len(batch_ids)
            self.losses.append(epoch_loss / len(order))

        logger.debug(
            "Trained on %d samples for %d epochs, loss %s",
            len(dataset), config.epochs, ["%.4f" % loss for loss in self.losses],
        )
        return flatten(model)


def train_local(model, dataset, config=None, seed=0):
    """ Local training of one worker on its own chunk.

    Args:
        model: MLP broadcast by the parameter server.
        dataset: Dataset. The worker's chunk.
        config: TrainingConfig.
        seed: int. Seeds the per-epoch batch order.
    Returns:
        Flat parameter vector after `config.epochs` passes.
    """
    return Training(model).run(dataset, config=config, seed=seed)
