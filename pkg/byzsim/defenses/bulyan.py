""" Bulyan: repeated inner selection builds a candidate set, then trimmed mean (variant 2) averages it. """

import numpy as np

from ._base_ import BaseDefense, AggregationResult, WorkerUpdate, sort_updates, check_defense_range
from .krum import _select
from .trimmed_mean import trimmed_mean
from ..com import logger


def shrinking_krum(updates, m):
    """ Krum on a set that shrinks during selection.

    The neighbour count n-m-2 is clamped into [1, r-1] for a set of size
    r, and a single remaining update is returned as is.
    """
    worker_ids, matrix = sort_updates(updates)
    r = len(worker_ids)
    if r == 1:
        return matrix[0].copy(), int(worker_ids[0]), np.zeros(1)
    n_neighbors = min(max(r - m - 2, 1), r - 1)
    return _select(worker_ids, matrix, n_neighbors)


def bulyan_selection(updates, m, inner_rule=shrinking_krum):
    """ Worker ids picked by `inner_rule`, in selection order, until n-2m are chosen. """
    n = len(updates)
    check_defense_range("bulyan", n, m)

    remaining = list(updates)
    selected = []
    while len(selected) < n - 2 * m:
        _, worker_id, _ = inner_rule(remaining, m)
        selected.append(worker_id)
        remaining = [update for update in remaining if update.worker_id != worker_id]
    return selected


def bulyan(updates, m, inner_rule=shrinking_krum):
    """ Aggregate with Bulyan.

    Args:
        updates: list of WorkerUpdate.
        m: int. Number of corrupted workers the rule is tuned for; also
          drives the inner trimmed mean, so n-4m values are averaged per dimension.
        inner_rule: callable `(updates, m) -> (params, worker_id, scores)`.
    Returns:
        Flat parameter vector.
    """
    selected = set(bulyan_selection(updates, m, inner_rule))
    selection_set = [
        WorkerUpdate(update.worker_id, update.params)
        for update in updates if update.worker_id in selected
    ]
    logger.debug("Bulyan selection set: %s", sorted(selected))
    return trimmed_mean(selection_set, m, variant=2)


class Bulyan(BaseDefense):

    name = "bulyan"

    def aggregate(self, updates):
        return AggregationResult(bulyan(updates, self.m_assumed))
