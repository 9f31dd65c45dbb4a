from ._base_ import BaseDefense, AggregationResult, sort_updates


def mean_aggregate(updates):
    """ Coordinate-wise average of all updates. """
    _, matrix = sort_updates(updates)
    return matrix.sum(axis=0) / len(matrix)


class NoDefense(BaseDefense):
    """ Plain averaging, with no outlier rejection. """

    name = "no_defense"

    def aggregate(self, updates):
        return AggregationResult(mean_aggregate(updates))
