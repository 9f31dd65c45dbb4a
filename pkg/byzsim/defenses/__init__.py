from ._base_ import (
    WorkerUpdate,
    DefenseChoice,
    AggregationResult,
    BaseDefense,
    DEFENSE_KINDS,
    check_defense_range,
    median_of,
)
from .mean import NoDefense, mean_aggregate
from .trimmed_mean import TrimmedMean, trimmed_mean
from .kmeans import KMeansCluster, kmeans_cluster_defense
from .krum import Krum, krum
from .bulyan import Bulyan, bulyan, bulyan_selection


def get_defense(choice):
    """ Build the aggregation rule described by a `DefenseChoice`. """
    choice.validate()
    if choice.kind == "no_defense":
        return NoDefense(choice.m_assumed)
    if choice.kind.startswith("trimmed_mean_v"):
        return TrimmedMean(choice.m_assumed, variant=int(choice.kind[-1]))
    if choice.kind == "kmeans_cluster":
        return KMeansCluster(choice.m_assumed, cluster_threshold=choice.cluster_threshold)
    if choice.kind == "krum":
        return Krum(choice.m_assumed)
    return Bulyan(choice.m_assumed)


__all__ = [
    "WorkerUpdate",
    "DefenseChoice",
    "AggregationResult",
    "BaseDefense",
    "DEFENSE_KINDS",
    "check_defense_range",
    "median_of",
    "get_defense",
    "NoDefense",
    "mean_aggregate",
    "TrimmedMean",
    "trimmed_mean",
    "KMeansCluster",
    "kmeans_cluster_defense",
    "Krum",
    "krum",
    "Bulyan",
    "bulyan",
    "bulyan_selection",
]
