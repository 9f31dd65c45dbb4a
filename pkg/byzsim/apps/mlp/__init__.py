from .mlp import MLP, forward, backward, flatten, unflatten, count_params, zeros

__all__ = ["MLP", "forward", "backward", "flatten", "unflatten", "count_params", "zeros"]
