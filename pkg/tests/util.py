import numpy as np

from byzsim.defenses import WorkerUpdate


def make_updates(matrix, worker_ids=None):
    """ One WorkerUpdate per row; a 1-D input gives one-dimensional updates. """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[:, None]
    if worker_ids is None:
        worker_ids = range(len(matrix))
    return [WorkerUpdate(int(i), row.copy()) for i, row in zip(worker_ids, matrix)]
