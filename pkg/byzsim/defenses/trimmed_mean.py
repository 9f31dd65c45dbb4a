""" Mean-around-median family: three ways of choosing which values to average per dimension. """

import numpy as np

from ._base_ import BaseDefense, AggregationResult, sort_updates, check_defense_range, lower_median_columns
from ..com import ConfigurationError


def _masked_mean(matrix, order, keep):
    """ Average the rows `order[:keep]` of each column, summed in worker-id order. """
    mask = np.zeros(matrix.shape, dtype=bool)
    np.put_along_axis(mask, order[:keep], True, axis=0)
    return np.where(mask, matrix, 0.0).sum(axis=0) / keep


def _nearest_to_median_mean(worker_ids, matrix, keep):
    n, d = matrix.shape
    median = lower_median_columns(matrix)
    distance = np.abs(matrix - median)
    ranks = np.broadcast_to(worker_ids[:, None], (n, d))

    # sort keys, primary last: distance, then absolute value, then worker id
    order = np.lexsort((ranks, np.abs(matrix), distance), axis=0)
    return _masked_mean(matrix, order, keep)


def trimmed_mean(updates, m, variant=2):
    """ Per-dimension trimmed average.

    Args:
        updates: list of WorkerUpdate.
        m: int. Number of corrupted workers the rule is tuned for.
        variant: 1 keeps the n-m values nearest the median, 2 keeps the
          n-2m nearest, 3 drops the m largest and m smallest.
    Returns:
        Flat parameter vector.
    """
    if variant not in (1, 2, 3):
        raise ConfigurationError("Invalid trimmed-mean variant `%s`. Pick from 1, 2 and 3." % variant)
    worker_ids, matrix = sort_updates(updates)
    n = len(worker_ids)
    check_defense_range("trimmed_mean_v%d" % variant, n, m)

    if variant == 1:
        return _nearest_to_median_mean(worker_ids, matrix, n - m)
    if variant == 2:
        return _nearest_to_median_mean(worker_ids, matrix, n - 2 * m)
    order = np.argsort(matrix, axis=0, kind="stable")
    return _masked_mean(matrix, order[m:], n - 2 * m)


class TrimmedMean(BaseDefense):

    def __init__(self, m_assumed=0, variant=2, **kwargs):
        super().__init__(m_assumed)
        self.variant = variant
        self.name = "trimmed_mean_v%d" % variant

    def __repr__(self):
        return "TrimmedMean(m_assumed=%d, variant=%d)" % (self.m_assumed, self.variant)

    def aggregate(self, updates):
        return AggregationResult(trimmed_mean(updates, self.m_assumed, self.variant))
