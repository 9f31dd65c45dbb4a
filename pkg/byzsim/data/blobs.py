""" Gaussian-blob classification data for desk-scale runs. """

import math

import numpy as np

from .dataset import Dataset
from ..com import ConfigurationError


def get_class_centers(class_count, dim, low=0.25, high=0.75):
    """ Class `c` sits at `high` on the dimensions congruent to c mod class_count, `low` elsewhere. """
    centers = np.full((class_count, dim), low, dtype=np.float64)
    for c in range(class_count):
        centers[c, c::class_count] = high
    return centers


def guess_image_width(dim):
    width = int(math.isqrt(dim))
    return width if width * width == dim else dim


def synth_blobs(class_count, dim, samples_per_class, spread, seed):
    """ Isotropic Gaussian noise around fixed lattice centers, clipped to [0, 1].

    The centers do not depend on `seed`, so two calls with different seeds
    give a train set and a test set of the same task.
    """
    if class_count < 1 or dim < 1 or samples_per_class < 1:
        raise ConfigurationError(
            "`class_count`, `dim` and `samples_per_class` should be positive, got %d, %d and %d."
            % (class_count, dim, samples_per_class)
        )
    if spread < 0:
        raise ConfigurationError("`spread` should be non-negative, got %r." % spread)

    rng = np.random.default_rng(seed)
    centers = get_class_centers(class_count, dim)
    labels = np.repeat(np.arange(class_count), samples_per_class)
    noise = rng.normal(0.0, 1.0, size=(len(labels), dim)) * spread
    inputs = np.clip(centers[labels] + noise, 0.0, 1.0)
    return Dataset(inputs, labels, class_count, guess_image_width(dim))
