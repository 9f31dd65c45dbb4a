import numpy as np

from ..apps.mlp import backward, unflatten
from ..attacks.backdoor import delta_loss, delta_scale, clamp_to_range
from ..com import ConfigurationError, logger
from ..opt import TrainingConfig, get_optimizer
from ._base_ import Task


class BackdoorTraining(Task):
    """ The attacker's inner loop: start at mu, learn the backdoor, stay close to mu.

    Minimizes alpha * backdoor_loss + (1 - alpha) * delta_loss with one
    full-batch step per local epoch, then clamps into mu +- z * sigma.

    `proximal` takes a momentum step on the backdoor term and solves the
    deviation term exactly, which stays stable for any sigma. `gradient`
    steps on the summed loss directly; its curvature grows like
    1 / (z * sigma)^2, so it may diverge and non-finite results are reset
    to mu. `projected` replaces the deviation term by the box itself: it
    steps on the backdoor term and projects back into mu +- z * sigma after
    every step.
    """

    def run(self, stats, z, alpha, inputs, targets, config=None, local_epochs=5,
            inner_optimizer="proximal", delta_reduction="sum"):
        config = config or TrainingConfig()
        layer_sizes = self.module
        mu, sigma = stats.mu, stats.sigma
        optimizer = get_optimizer(config)

        if inner_optimizer == "proximal":
            # proximal map of (1 - alpha) * delta_loss, solved per dimension
            weight = (1.0 - alpha) / delta_scale(sigma, z) ** 2
            if delta_reduction == "mean":
                weight = weight / len(mu)
            shrink = 2.0 * optimizer.learning_rate * weight
        elif inner_optimizer not in ("gradient", "projected"):
            raise ConfigurationError("Unknown inner optimizer `%s`." % inner_optimizer)

        params = mu.copy()
        velocity = np.zeros_like(params)
        self.backdoor_losses = []
        self.losses = []
        for _ in range(int(local_epochs)):
            backdoor_gradient, backdoor_loss = backward(
                unflatten(params, layer_sizes), inputs, targets, l2_weight=0.0,
            )
            deviation, deviation_gradient = delta_loss(params, mu, sigma, z, reduction=delta_reduction)
            self.backdoor_losses.append(backdoor_loss)
            self.losses.append(alpha * backdoor_loss + (1.0 - alpha) * deviation)

            if inner_optimizer == "proximal":
                params, velocity = optimizer.apply_gradients(params, alpha * backdoor_gradient, velocity)
                params = (params + shrink * mu) / (1.0 + shrink)
            elif inner_optimizer == "projected":
                params, velocity = optimizer.apply_gradients(params, alpha * backdoor_gradient, velocity)
                params = clamp_to_range(params, mu, sigma, z)
            else:
                gradient = alpha * backdoor_gradient + (1.0 - alpha) * deviation_gradient
                params, velocity = optimizer.apply_gradients(params, gradient, velocity)

        if local_epochs:
            _, backdoor_loss = backward(unflatten(params, layer_sizes), inputs, targets, l2_weight=0.0)
            self.backdoor_losses.append(backdoor_loss)

        broken = ~np.isfinite(params)
        if broken.any():
            logger.warning("Reset %d non-finite backdoor parameters to mu before clamping", int(broken.sum()))
            params = np.where(broken, mu, params)

        logger.debug("Backdoor loss over local epochs: %s", ["%.4f" % loss for loss in self.backdoor_losses])
        return clamp_to_range(params, mu, sigma, z)
