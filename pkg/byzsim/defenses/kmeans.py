""" Per-parameter 2-means clustering defense: drop the smaller cluster when the centers are far apart. """

import numpy as np

from ._base_ import BaseDefense, AggregationResult, sort_updates, check_defense_range, lower_median_columns
from ..com import ConfigurationError

MAX_LLOYD_ITERATIONS = 100


def _cluster_means(matrix, in_low, low, high):
    count_low = in_low.sum(axis=0)
    count_high = matrix.shape[0] - count_low
    sum_low = np.where(in_low, matrix, 0.0).sum(axis=0)
    sum_high = np.where(in_low, 0.0, matrix).sum(axis=0)

    # an empty cluster keeps its previous center
    with np.errstate(invalid="ignore", divide="ignore"):
        low = np.where(count_low > 0, sum_low / np.maximum(count_low, 1), low)
        high = np.where(count_high > 0, sum_high / np.maximum(count_high, 1), high)
    return low, high


def _assign(matrix, low, high):
    return np.abs(matrix - low) <= np.abs(matrix - high)    # ties go to the lower center


def two_means_columns(matrix, max_iterations=MAX_LLOYD_ITERATIONS):
    """ 1-D Lloyd iterations on every column, started from the column min and max.

    Returns:
        (in_low, low, high): boolean membership of the lower cluster and both centers.
    """
    low = matrix.min(axis=0)
    high = matrix.max(axis=0)
    in_low = _assign(matrix, low, high)
    for _ in range(max_iterations):
        low, high = _cluster_means(matrix, in_low, low, high)
        next_in_low = _assign(matrix, low, high)
        if np.array_equal(next_in_low, in_low):
            break
        in_low = next_in_low
    return in_low, low, high


def kmeans_cluster_defense(updates, cluster_threshold):
    """ Average per dimension, dropping the smaller 2-means cluster when the centers are far apart.

    Args:
        updates: list of WorkerUpdate.
        cluster_threshold: float. Center gap above which the smaller cluster is discarded.
    Returns:
        Flat parameter vector.
    """
    if cluster_threshold < 0:
        raise ConfigurationError("`cluster_threshold` should be non-negative, got %r." % cluster_threshold)
    worker_ids, matrix = sort_updates(updates)
    n = len(worker_ids)
    check_defense_range("kmeans_cluster", n, 0)

    in_low, low, high = two_means_columns(matrix)
    count_low = in_low.sum(axis=0)
    count_high = n - count_low

    # which cluster survives when the gap is too large; size ties go to the median's cluster
    median = lower_median_columns(matrix)
    median_in_low = _assign(median, low, high)
    keep_low = np.where(count_low == count_high, median_in_low, count_low > count_high)
    keep = np.where(keep_low, in_low, ~in_low)

    discard = np.abs(high - low) > cluster_threshold
    keep = np.where(discard, keep, True)
    kept_sum = np.where(keep, matrix, 0.0).sum(axis=0)
    return kept_sum / keep.sum(axis=0)


class KMeansCluster(BaseDefense):

    name = "kmeans_cluster"

    def __init__(self, m_assumed=0, cluster_threshold=1.0, **kwargs):
        super().__init__(m_assumed)
        self.cluster_threshold = cluster_threshold

    def __repr__(self):
        return "KMeansCluster(cluster_threshold=%r)" % self.cluster_threshold

    def aggregate(self, updates):
        return AggregationResult(kmeans_cluster_defense(updates, self.cluster_threshold))
