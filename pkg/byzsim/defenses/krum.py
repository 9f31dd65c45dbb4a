import numpy as np

from ._base_ import BaseDefense, AggregationResult, sort_updates, check_defense_range


def pairwise_squared_distances(matrix):
    """ Exact squared Euclidean distances, one row at a time to bound memory for large d. """
    n = matrix.shape[0]
    distances = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        diff = matrix - matrix[i]
        distances[i] = np.einsum("ij,ij->i", diff, diff)
    return distances


def krum_scores(matrix, n_neighbors):
    """ Sum of squared distances from each row to its `n_neighbors` nearest other rows. """
    n = matrix.shape[0]
    distances = pairwise_squared_distances(matrix)
    scores = np.empty(n, dtype=np.float64)
    for i in range(n):
        others = np.sort(np.delete(distances[i], i))
        scores[i] = others[:n_neighbors].sum()
    return scores


def _select(worker_ids, matrix, n_neighbors):
    scores = krum_scores(matrix, n_neighbors)
    index = int(np.argmin(scores))    # first minimum, i.e. the smallest worker id
    return matrix[index].copy(), int(worker_ids[index]), scores


def krum(updates, m):
    """ Select the update closest to its n-m-2 nearest neighbours.

    Args:
        updates: list of WorkerUpdate.
        m: int. Number of corrupted workers the rule is tuned for.
    Returns:
        (selected params, selected worker id, scores) where `scores[k]`
        belongs to the k-th smallest worker id.
    """
    worker_ids, matrix = sort_updates(updates)
    n = len(worker_ids)
    check_defense_range("krum", n, m)
    return _select(worker_ids, matrix, n - m - 2)


class Krum(BaseDefense):

    name = "krum"

    def aggregate(self, updates):
        params, worker_id, _ = krum(updates, self.m_assumed)
        return AggregationResult(params, selected=worker_id)
