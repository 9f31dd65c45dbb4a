from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..com import ConfigurationError, ShapeError

ATTACK_KINDS = ("none", "prevent_convergence", "backdoor")
BACKDOOR_KINDS = ("none", "pattern", "sample")
SIGNS = ("+", "-", "along", "against")
INNER_OPTIMIZERS = ("proximal", "gradient", "projected")
DELTA_REDUCTIONS = ("sum", "mean")


@dataclass(frozen=True)
class BackdoorSpec:
    """ What the backdoor looks like.

    A `pattern` backdoor sets the top-left `size` x `size` pixels to
    `intensity` and relabels the image as `target`; every round the
    attacker patches `sample_count` of the corrupted workers' images. A
    `sample` backdoor maps the listed training images to
    `(label + 1) mod class_count`.
    """
    kind: str = "none"
    size: int = 5
    intensity: float = 1.0
    target: int = 0
    sample_count: int = 1000
    indices: tuple = ()
    inputs: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    targets: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_dataset_samples(cls, dataset, indices, **kwargs):
        """ Sample backdoor on `dataset[indices]` with targets shifted by one class. """
        indices = tuple(int(i) for i in indices)
        if not indices:
            raise ConfigurationError("A sample backdoor needs at least one sample index.")
        if min(indices) < 0 or max(indices) >= len(dataset):
            raise ConfigurationError(
                "Backdoor sample indices should lie in [0, %d), got %s." % (len(dataset), list(indices))
            )
        inputs = dataset.inputs[list(indices)].copy()
        targets = (dataset.labels[list(indices)] + 1) % dataset.class_count
        return cls(kind="sample", indices=indices, inputs=inputs, targets=targets, **kwargs)

    @property
    def is_resolved(self):
        return self.kind != "sample" or self.inputs is not None

    def validate(self, class_count=None):
        if self.kind not in BACKDOOR_KINDS:
            raise ConfigurationError(
                "Unknown backdoor `%s`. Pick one from %s." % (self.kind, ", ".join(BACKDOOR_KINDS))
            )
        if self.kind == "pattern":
            if int(self.size) < 1:
                raise ConfigurationError("`backdoor_size` should be a positive integer, got %r." % self.size)
            if not 0 <= self.intensity <= 1:
                raise ConfigurationError("`backdoor_intensity` should lie in [0, 1], got %r." % self.intensity)
            if int(self.sample_count) < 1:
                raise ConfigurationError("`backdoor_samples` should be a positive integer, got %r." % self.sample_count)
            if self.target < 0 or (class_count is not None and self.target >= class_count):
                raise ConfigurationError("`backdoor_target` %d is not a valid class." % self.target)
        if self.kind == "sample":
            if not self.indices and self.inputs is None:
                raise ConfigurationError("A sample backdoor needs `backdoor_sample_indices`.")
            if self.inputs is not None:
                if self.targets is None or len(self.targets) != len(self.inputs):
                    raise ShapeError("Backdoor samples and targets should have the same length.")
                if np.any(self.targets < 0) or (class_count is not None and np.any(self.targets >= class_count)):
                    raise ConfigurationError("Backdoor targets should be valid classes.")
        return self


@dataclass(frozen=True)
class AttackConfig:
    """ The malicious intervention applied to the corrupted workers' updates.

    `sign` picks the direction of the shift: "+" and "-" push every
    dimension to mu + z*sigma or mu - z*sigma, "along" follows
    sign(mu - P) relative to the broadcast model P, "against" opposes it.
    """
    kind: str = "none"
    z: float = 1.0
    omniscient: bool = False
    alpha: float = 0.2
    backdoor: BackdoorSpec = field(default_factory=BackdoorSpec)
    local_epochs: int = 5
    sign: str = "+"
    inner_optimizer: str = "proximal"
    delta_reduction: str = "sum"

    def validate(self, class_count=None):
        if self.kind not in ATTACK_KINDS:
            raise ConfigurationError(
                "Unknown attack `%s`. Pick one from %s." % (self.kind, ", ".join(ATTACK_KINDS))
            )
        if not self.z >= 0:
            raise ConfigurationError("`z` should be non-negative, got %r." % self.z)
        if not 0 <= self.alpha <= 1:
            raise ConfigurationError("`alpha` should lie in [0, 1], got %r." % self.alpha)
        if int(self.local_epochs) < 0:
            raise ConfigurationError("`local_epochs` should be non-negative, got %r." % self.local_epochs)
        if self.sign not in SIGNS:
            raise ConfigurationError("Unknown sign `%s`. Pick one from %s." % (self.sign, ", ".join(SIGNS)))
        if self.inner_optimizer not in INNER_OPTIMIZERS:
            raise ConfigurationError(
                "Unknown inner optimizer `%s`. Pick one from %s." % (self.inner_optimizer, ", ".join(INNER_OPTIMIZERS))
            )
        if self.delta_reduction not in DELTA_REDUCTIONS:
            raise ConfigurationError(
                "Unknown delta reduction `%s`. Pick one from %s." % (self.delta_reduction, ", ".join(DELTA_REDUCTIONS))
            )
        if self.kind == "backdoor" and self.backdoor.kind == "none":
            raise ConfigurationError("A backdoor attack needs a backdoor, set `backdoor` to `pattern` or `sample`.")
        self.backdoor.validate(class_count)
        return self


def shift_direction(sign, mu, broadcast=None):
    """ Per-dimension +1/-1 multiplier of z*sigma. """
    if sign == "+":
        return np.ones_like(mu)
    if sign == "-":
        return -np.ones_like(mu)
    if broadcast is None:
        raise ConfigurationError("Sign `%s` needs the broadcast parameters of the round." % sign)
    direction = np.where(mu >= broadcast, 1.0, -1.0)
    return direction if sign == "along" else -direction


class BaseAttack:
    """ Parent class of all attacks.

    An attack sees the updates of one round and returns the single vector
    every corrupted worker reports instead of its own.
    """

    name = "none"

    def __init__(self, config, n, m):
        self.config = config
        self.n = n
        self.m = m

    def __repr__(self):
        return "%s(z=%s, omniscient=%s)" % (self.__class__.__name__, self.config.z, self.config.omniscient)

    def stats_source(self, updates, corrupted_ids):
        """ Updates the attacker may look at: all of them when omniscient, else its own. """
        if self.config.omniscient:
            return list(updates)
        corrupted_ids = set(corrupted_ids)
        return [update for update in updates if update.worker_id in corrupted_ids]

    def craft(self, updates, corrupted_ids, broadcast, rng=None, **kwargs):
        raise NotImplementedError()
