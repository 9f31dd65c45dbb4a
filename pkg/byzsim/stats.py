""" Standard-normal machinery and per-dimension statistics of worker updates. """

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .com import DomainError, ConfigurationError, AttackerMajorityError, InsufficientDataError, ShapeError

Z_GRID_STEP = 0.01
Z_CONTINUOUS_MARGIN = 1e-9

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class DimensionStats:
    """ Per-dimension mean `mu` and population standard deviation `sigma`. """
    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        if self.mu.ndim != 1 or self.mu.shape != self.sigma.shape or len(self.mu) < 1:
            raise ShapeError(
                "`mu` and `sigma` should be vectors of identical length, got %s and %s."
                % (self.mu.shape, self.sigma.shape)
            )
        if np.any(self.sigma < 0):
            raise DomainError("`sigma` should be non-negative.")

    @property
    def dim(self):
        return len(self.mu)


@dataclass(frozen=True)
class AttackBudget:
    """ How far, in units of sigma, the corrupted workers may drift unnoticed.

    `z_max` emulates a two-decimal z-table lookup. `z_continuous` is the
    exact supremum minus a hair, for callers who do not want the grid.
    """
    n: int
    m: int
    s: int
    threshold: float
    z_max: float
    z_continuous: float


def standard_normal_cdf(z):
    """ Cumulative standard normal function. """
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("Standard normal CDF needs a finite argument, got %r." % z)
    return 0.5 * (1.0 + math.erf(z / _SQRT2))


def inverse_standard_normal_cdf(p):
    """ Quantile of the standard normal. """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError("Standard normal quantile needs a probability in (0, 1), got %r." % p)
    return float(norm.ppf(p))


def required_seduced(n, m):
    """ Non-corrupted workers the attacker must win over to control the median. """
    return n // 2 + 1 - m


def compute_z_max(n, m):
    """ Attack budget of `m` corrupted workers out of `n`.

    Args:
        n: int. Total number of workers.
        m: int. Number of corrupted workers.
    Returns:
        An `AttackBudget`.
    """
    n, m = int(n), int(m)
    if not 1 <= m < n:
        raise ConfigurationError("Expect 1 <= m < n, got n=%d and m=%d." % (n, m))

    s = required_seduced(n, m)
    if s <= 0:
        raise AttackerMajorityError(
            "The attacker already holds a majority (n=%d, m=%d, s=%d), the perturbation "
            "range is unconstrained." % (n, m, s)
        )
    threshold = (n - s) / n

    # z-table emulation: walk the 0.01 grid to the last value below threshold
    k = 0
    if standard_normal_cdf(0.0) < threshold:
        while standard_normal_cdf((k + 1) / 100) < threshold:
            k += 1
    else:
        k = -1
        while standard_normal_cdf(k / 100) >= threshold:
            k -= 1

    return AttackBudget(
        n=n,
        m=m,
        s=s,
        threshold=threshold,
        z_max=k / 100,
        z_continuous=inverse_standard_normal_cdf(threshold) - Z_CONTINUOUS_MARGIN,
    )


def stack_params(updates):
    """ Stack worker updates (or raw vectors) into an `[n, d]` float matrix. """
    vectors = [getattr(update, "params", update) for update in updates]
    if not vectors:
        raise InsufficientDataError("No updates given.")
    lengths = {np.shape(vector) for vector in vectors}
    if len(lengths) != 1 or len(next(iter(lengths))) != 1:
        raise ShapeError("All parameter vectors should share one length, got shapes %s." % sorted(lengths))
    return np.asarray(np.stack(vectors), dtype=np.float64)


def per_dimension_stats(updates):
    """ Mean and population standard deviation of each dimension across updates. """
    if len(updates) < 2:
        raise InsufficientDataError("At least 2 updates are needed to estimate statistics, got %d." % len(updates))
    matrix = stack_params(updates)
    mu = matrix.mean(axis=0)
    sigma = np.sqrt(np.mean((matrix - mu) ** 2, axis=0))
    return DimensionStats(mu=mu, sigma=sigma)
