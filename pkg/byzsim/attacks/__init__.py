from ._base_ import (
    AttackConfig,
    BackdoorSpec,
    BaseAttack,
    ATTACK_KINDS,
    BACKDOOR_KINDS,
    shift_direction,
)
from .convergence import PreventConvergence, craft_prevent_convergence
from .backdoor import (
    Backdoor,
    craft_backdoor,
    delta_loss,
    apply_backdoor_pattern,
    sample_backdoor_set,
    clamp_to_range,
)


def get_attack(config, n, m, layer_sizes=None, training=None):
    """ Build the attack described by an `AttackConfig`, or `None` when there is nothing to do. """
    if config.kind == "none" or m == 0:
        return None
    if config.kind == "prevent_convergence":
        return PreventConvergence(config, n, m)
    return Backdoor(config, n, m, layer_sizes=layer_sizes, training=training)


__all__ = [
    "AttackConfig",
    "BackdoorSpec",
    "BaseAttack",
    "ATTACK_KINDS",
    "BACKDOOR_KINDS",
    "shift_direction",
    "get_attack",
    "PreventConvergence",
    "craft_prevent_convergence",
    "Backdoor",
    "craft_backdoor",
    "delta_loss",
    "apply_backdoor_pattern",
    "sample_backdoor_set",
    "clamp_to_range",
]
