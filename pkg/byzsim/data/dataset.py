from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..com import ConfigurationError, InsufficientDataError, ShapeError


@dataclass
class Dataset:
    """ Row-major inputs in [0, 1] with class-index labels.

    `image_width` says how a flat row folds into an image, which is what
    pattern backdoors need to find the upper-left corner.
    """
    inputs: np.ndarray
    labels: np.ndarray
    class_count: int
    image_width: Optional[int] = None

    def __post_init__(self):
        self.inputs = np.asarray(self.inputs, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.inputs.ndim != 2:
            raise ShapeError("`inputs` should be a 2-D matrix, got shape %s." % (self.inputs.shape,))
        if len(self.inputs) != len(self.labels):
            raise ShapeError(
                "Rows of `inputs` and length of `labels` differ (%d vs. %d)."
                % (len(self.inputs), len(self.labels))
            )
        if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= self.class_count):
            raise ShapeError("Labels should lie in [0, %d)." % self.class_count)
        if self.inputs.size and (self.inputs.min() < 0.0 or self.inputs.max() > 1.0):
            raise ShapeError("Input values should lie in [0, 1].")
        if self.image_width is None:
            self.image_width = self.n_features

    def __len__(self):
        return len(self.labels)

    @property
    def n_features(self):
        return self.inputs.shape[1]

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.inputs[indices], self.labels[indices], self.class_count, self.image_width)


@dataclass
class DataSplit:
    """ Disjoint index chunks, one per worker. """
    chunks: List[np.ndarray] = field(default_factory=list)

    @property
    def n(self):
        return len(self.chunks)

    def sizes(self):
        return [len(chunk) for chunk in self.chunks]


def split_iid(dataset, n, seed):
    """ Seeded global shuffle, then round-robin assignment to `n` workers.

    Args:
        dataset: Dataset, or an int sample count.
        n: int. Number of workers.
        seed: int.
    Returns:
        A `DataSplit` whose chunk sizes differ by at most one.
    """
    n_samples = dataset if isinstance(dataset, (int, np.integer)) else len(dataset)
    if n < 1:
        raise ConfigurationError("Number of workers should be positive, got %d." % n)
    if n > n_samples:
        raise ConfigurationError("Can't split %d samples among %d workers." % (n_samples, n))

    order = np.random.default_rng(seed).permutation(n_samples)
    # chunks keep dataset order, so one worker holds exactly the full dataset
    return DataSplit(chunks=[np.sort(order[i::n]) for i in range(n)])


def concat_chunks(split, worker_ids):
    """ Union of the chunks owned by `worker_ids`, in worker order. """
    if not len(worker_ids):
        raise InsufficientDataError("No workers given.")
    return np.concatenate([split.chunks[i] for i in worker_ids])
