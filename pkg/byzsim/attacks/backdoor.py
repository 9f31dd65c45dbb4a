""" Backdooring: train towards malicious targets from mu, then clamp into mu +- z * sigma. """

import numpy as np

from ..com import ConfigurationError, InsufficientDataError, ShapeError
from ..opt import TrainingConfig
from ..stats import per_dimension_stats
from ._base_ import BaseAttack
from .convergence import warn_if_detectable

MIN_DELTA_SCALE = 1e-5


def delta_scale(sigma, z):
    """ Per-dimension denominator of the deviation penalty, floored at 1e-5. """
    return np.maximum(z * np.asarray(sigma, dtype=np.float64), MIN_DELTA_SCALE)


def delta_loss(new_params, old_params, sigma, z, reduction="sum"):
    """ Penalty for moving away from `old_params`, measured in units of z * sigma.

    Args:
        new_params: flat vector of length d.
        old_params: flat vector of length d.
        sigma: per-dimension standard deviations, length d.
        z: float.
        reduction: "sum" or "mean" over dimensions.
    Returns:
        (loss, gradient w.r.t. `new_params`)
    """
    new_params = np.asarray(new_params, dtype=np.float64)
    old_params = np.asarray(old_params, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    if not (new_params.shape == old_params.shape == sigma.shape) or new_params.ndim != 1:
        raise ShapeError(
            "Expect vectors of one length, got %s, %s and %s."
            % (new_params.shape, old_params.shape, sigma.shape)
        )
    if reduction not in ("sum", "mean"):
        raise ConfigurationError("Unknown reduction `%s`." % reduction)

    scale = delta_scale(sigma, z)
    ratio = (new_params - old_params) / scale
    loss = float(np.sum(ratio ** 2))
    gradient = 2.0 * ratio / scale
    if reduction == "mean":
        loss /= len(ratio)
        gradient /= len(ratio)
    return loss, gradient


def pattern_indices(size, image_width):
    """ Flat indices of the top-left `size` x `size` block of a row-major image. """
    rows, cols = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    return (rows * image_width + cols).ravel()


def apply_backdoor_pattern(images, spec, image_width):
    """ Stamp the backdoor pattern onto flat images.

    Args:
        images: [N, D] matrix (or one D vector) of row-major images.
        spec: BackdoorSpec of kind "pattern".
        image_width: int. Pixels per image row.
    Returns:
        (patched copy of `images`, labels all equal to `spec.target`)
    """
    images = np.array(images, dtype=np.float64)
    single = images.ndim == 1
    if single:
        images = images[None, :]
    n_features = images.shape[1]
    image_width = int(image_width)
    image_height = n_features // image_width if image_width > 0 else 0
    if image_width < spec.size or image_height < spec.size:
        raise ShapeError(
            "Images of %d x %d pixels can't hold a %d x %d pattern."
            % (image_height, image_width, spec.size, spec.size)
        )

    images[:, pattern_indices(spec.size, image_width)] = spec.intensity
    labels = np.full(len(images), spec.target, dtype=np.int64)
    if single:
        return images[0], labels
    return images, labels


def sample_backdoor_set(spec, dataset, indices, rng):
    """ Backdoor inputs and malicious targets the attacker trains on this round.

    Args:
        spec: BackdoorSpec.
        dataset: Dataset the corrupted workers hold.
        indices: indices into `dataset` owned by the corrupted workers.
        rng: numpy Generator.
    Returns:
        (inputs, targets)
    """
    if spec.kind == "sample":
        if not spec.is_resolved:
            spec = spec.from_dataset_samples(dataset, spec.indices)
        return spec.inputs, spec.targets
    if spec.kind != "pattern":
        raise ConfigurationError("No backdoor to sample, got kind `%s`." % spec.kind)

    pool = np.asarray(indices, dtype=np.int64)
    if not len(pool):
        raise InsufficientDataError("Corrupted workers hold no samples to backdoor.")
    count = int(spec.sample_count)
    chosen = rng.choice(pool, size=count, replace=len(pool) < count)
    return apply_backdoor_pattern(dataset.inputs[chosen], spec, dataset.image_width)


def clamp_to_range(params, mu, sigma, z):
    """ max(min(v, mu + z * sigma), mu - z * sigma) per dimension. """
    return np.maximum(np.minimum(params, mu + z * sigma), mu - z * sigma)


def craft_backdoor(corrupted_updates, n, m, z, alpha, backdoor_set, layer_sizes,
                   config=None, local_epochs=5, inner_optimizer="proximal", delta_reduction="sum"):
    """ Malicious parameters carrying a backdoor while staying within z * sigma of mu.

    Args:
        corrupted_updates: list of WorkerUpdate the statistics are estimated from.
        n: int. Total number of workers.
        m: int. Number of corrupted workers.
        z: float. Allowed deviation in units of sigma.
        alpha: float in [0, 1]. Weight of the backdoor loss against the deviation loss.
        backdoor_set: (inputs, targets) to train towards.
        layer_sizes: MLP layout the parameter vectors follow.
        config: TrainingConfig of the inner loop. Defaults to the engine defaults.
        local_epochs: int. Full-batch steps of the inner loop.
        inner_optimizer: "proximal", "gradient" or "projected".
        delta_reduction: "sum" or "mean".
    Returns:
        Flat parameter vector.
    """
    from ..task import BackdoorTraining

    if z < 0:
        raise ConfigurationError("`z` should be non-negative, got %r." % z)
    if not 0 <= alpha <= 1:
        raise ConfigurationError("`alpha` should lie in [0, 1], got %r." % alpha)
    warn_if_detectable(n, m, z)

    stats = per_dimension_stats(corrupted_updates)
    inputs, targets = backdoor_set
    task = BackdoorTraining(layer_sizes)
    return task.run(
        stats, z, alpha, inputs, targets,
        config=config or TrainingConfig(),
        local_epochs=local_epochs,
        inner_optimizer=inner_optimizer,
        delta_reduction=delta_reduction,
    )


class Backdoor(BaseAttack):

    name = "backdoor"

    def __init__(self, config, n, m, layer_sizes=None, training=None):
        super().__init__(config, n, m)
        self.layer_sizes = layer_sizes
        self.training = training

    def craft(self, updates, corrupted_ids, broadcast, rng=None, backdoor_set=None, **kwargs):
        if backdoor_set is None:
            raise ConfigurationError("A backdoor attack needs the round's backdoor samples.")
        return craft_backdoor(
            self.stats_source(updates, corrupted_ids), self.n, self.m,
            self.config.z, self.config.alpha, backdoor_set, self.layer_sizes,
            config=self.training,
            local_epochs=self.config.local_epochs,
            inner_optimizer=self.config.inner_optimizer,
            delta_reduction=self.config.delta_reduction,
        )
