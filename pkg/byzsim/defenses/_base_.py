from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..com import ConfigurationError, InsufficientDataError, ShapeError
from ..stats import stack_params

DEFENSE_KINDS = (
    "no_defense",
    "trimmed_mean_v1",
    "trimmed_mean_v2",
    "trimmed_mean_v3",
    "kmeans_cluster",
    "krum",
    "bulyan",
)


@dataclass(frozen=True)
class WorkerUpdate:
    """ Parameters reported by one worker in one round. """
    worker_id: int
    params: np.ndarray


@dataclass(frozen=True)
class AggregationResult:
    params: np.ndarray
    selected: Optional[int] = None


@dataclass(frozen=True)
class DefenseChoice:
    """ Which aggregation rule the parameter server runs, and the `m` it is tuned for. """
    kind: str = "no_defense"
    m_assumed: int = 0
    cluster_threshold: float = 1.0

    def validate(self, n=None):
        if self.kind not in DEFENSE_KINDS:
            raise ConfigurationError(
                "Unknown defense `%s`. Pick one from %s." % (self.kind, ", ".join(DEFENSE_KINDS))
            )
        if self.m_assumed < 0:
            raise ConfigurationError("`m_assumed` should be non-negative, got %d." % self.m_assumed)
        if self.cluster_threshold < 0:
            raise ConfigurationError("`cluster_threshold` should be non-negative.")
        if n is not None:
            check_defense_range(self.kind, n, self.m_assumed)
        return self


def check_defense_range(kind, n, m):
    """ Raise `ConfigurationError` when `n` workers can't support a defense tuned for `m`. """
    if m < 0:
        raise ConfigurationError("`m` should be non-negative, got %d." % m)
    if kind == "trimmed_mean_v1":
        ok, rule = n > m and m <= (n + 1) // 2 - 1, "n > m and m <= ceil(n/2) - 1"
    elif kind in ("trimmed_mean_v2", "trimmed_mean_v3"):
        ok, rule = n > 2 * m, "n > 2m"
    elif kind == "krum":
        ok, rule = n >= m + 3, "n >= m + 3"
    elif kind == "bulyan":
        ok, rule = n >= 4 * m + 3, "n >= 4m + 3"
    elif kind == "kmeans_cluster":
        ok, rule = n >= 2, "n >= 2"
    else:
        ok, rule = n >= 1, "n >= 1"
    if not ok:
        raise ConfigurationError("`%s` requires %s, got n=%d and m=%d." % (kind, rule, n, m))


def sort_updates(updates):
    """ Order updates by worker id and stack them into an `[n, d]` matrix. """
    if not len(updates):
        raise InsufficientDataError("No updates to aggregate.")
    updates = sorted(updates, key=lambda update: update.worker_id)
    worker_ids = np.array([update.worker_id for update in updates], dtype=np.int64)
    if len(set(worker_ids.tolist())) != len(worker_ids):
        raise ShapeError("Worker ids should be unique within a round.")
    return worker_ids, stack_params(updates)


def median_of(values):
    """ Lower median: element `ceil(k/2) - 1` of the sorted values. """
    values = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if not len(values):
        raise InsufficientDataError("Median of an empty list.")
    return float(values[(len(values) + 1) // 2 - 1])


def lower_median_columns(matrix):
    """ Per-column lower median of an `[n, d]` matrix. """
    n = matrix.shape[0]
    return np.sort(matrix, axis=0)[(n + 1) // 2 - 1]


class BaseDefense:
    """ Parent class of all aggregation rules. """

    name = None

    def __init__(self, m_assumed=0, **kwargs):
        self.m_assumed = m_assumed

    def __repr__(self):
        return "%s(m_assumed=%d)" % (self.__class__.__name__, self.m_assumed)

    def aggregate(self, updates):
        """ Returns an `AggregationResult`. """
        raise NotImplementedError()
