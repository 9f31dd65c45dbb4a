""" Convergence prevention: every corrupted worker reports mu + z * sigma. """

from ..com import ConfigurationError, AttackerMajorityError, logger
from ..stats import compute_z_max, per_dimension_stats
from ._base_ import BaseAttack, shift_direction


def warn_if_detectable(n, m, z):
    """ Log a warning when `z` exceeds the z-table budget of (n, m). """
    try:
        budget = compute_z_max(n, m)
    except AttackerMajorityError:
        return None
    if z > budget.z_max:
        logger.warning(
            "z=%s exceeds z_max=%.2f for n=%d and m=%d, the malicious values may fall outside "
            "the benign range", z, budget.z_max, n, m,
        )
    return budget


def craft_prevent_convergence(corrupted_updates, n, m, z, sign="+", broadcast=None):
    """ Malicious parameters shared by all corrupted workers.

    Args:
        corrupted_updates: list of WorkerUpdate (or vectors) the statistics
          are estimated from.
        n: int. Total number of workers.
        m: int. Number of corrupted workers.
        z: float. Shift in units of sigma.
        sign: string. One of "+", "-", "along" and "against".
        broadcast: the round's broadcast parameters, needed by "along" and "against".
    Returns:
        Flat parameter vector.
    """
    if z < 0:
        raise ConfigurationError("`z` should be non-negative, got %r." % z)
    warn_if_detectable(n, m, z)

    stats = per_dimension_stats(corrupted_updates)
    return stats.mu + shift_direction(sign, stats.mu, broadcast) * z * stats.sigma


class PreventConvergence(BaseAttack):

    name = "prevent_convergence"

    def craft(self, updates, corrupted_ids, broadcast, rng=None, **kwargs):
        return craft_prevent_convergence(
            self.stats_source(updates, corrupted_ids), self.n, self.m, self.config.z,
            sign=self.config.sign, broadcast=broadcast,
        )
