""" Multi-layer perceptron with ReLU hidden layers and a softmax output. """

from dataclasses import dataclass
from typing import List

import numpy as np

from .. import util
from ...com import ShapeError, InsufficientDataError


@dataclass
class MLP:
    """ Layer shapes plus per-layer weights `[sizes[k], sizes[k+1]]` and biases `[sizes[k+1]]`. """
    layer_sizes: List[int]
    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def __post_init__(self):
        self.layer_sizes = [int(size) for size in self.layer_sizes]
        if len(self.layer_sizes) < 2 or min(self.layer_sizes) < 1:
            raise ShapeError("`layer_sizes` needs at least 2 positive sizes, got %s." % self.layer_sizes)
        expected = get_layer_shapes(self.layer_sizes)
        got = [(w.shape, b.shape) for w, b in zip(self.weights, self.biases)]
        if len(self.weights) != len(self.biases) or got != expected:
            raise ShapeError("Weights and biases do not match layer sizes %s." % self.layer_sizes)

    @property
    def input_size(self):
        return self.layer_sizes[0]

    @property
    def label_size(self):
        return self.layer_sizes[-1]

    @property
    def n_params(self):
        return count_params(self.layer_sizes)

    def copy(self):
        return MLP(list(self.layer_sizes), [w.copy() for w in self.weights], [b.copy() for b in self.biases])

    def predict(self, batch):
        return np.argmax(forward(self, batch), axis=-1)


def get_layer_shapes(layer_sizes):
    return [
        ((layer_sizes[k], layer_sizes[k + 1]), (layer_sizes[k + 1],))
        for k in range(len(layer_sizes) - 1)
    ]


def count_params(layer_sizes):
    """ d = sum over layers of sizes[k] * sizes[k+1] + sizes[k+1]. """
    return sum(
        layer_sizes[k] * layer_sizes[k + 1] + layer_sizes[k + 1]
        for k in range(len(layer_sizes) - 1)
    )


def zeros(layer_sizes):
    return unflatten(np.zeros(count_params(layer_sizes)), layer_sizes)


def flatten(model):
    """ Layer by layer: weights in row-major order, then biases. """
    pieces = []
    for w, b in zip(model.weights, model.biases):
        pieces.append(w.ravel())
        pieces.append(b.ravel())
    return np.concatenate(pieces).astype(np.float64)


def unflatten(vector, layer_sizes):
    vector = np.asarray(vector, dtype=np.float64)
    layer_sizes = [int(size) for size in layer_sizes]
    d = count_params(layer_sizes)
    if vector.ndim != 1 or len(vector) != d:
        raise ShapeError(
            "A vector of length %d is expected for layer sizes %s, got shape %s."
            % (d, layer_sizes, vector.shape)
        )

    weights, biases = [], []
    ptr = 0
    for w_shape, b_shape in get_layer_shapes(layer_sizes):
        size = w_shape[0] * w_shape[1]
        weights.append(vector[ptr: ptr + size].reshape(w_shape).copy())
        ptr += size
        biases.append(vector[ptr: ptr + b_shape[0]].copy())
        ptr += b_shape[0]
    return MLP(layer_sizes, weights, biases)


def _check_batch(model, batch):
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 2 or batch.shape[1] != model.input_size:
        raise ShapeError(
            "Batch should have shape [batch_size, %d], got %s." % (model.input_size, batch.shape)
        )
    return batch


def _forward_with_cache(model, batch):
    activations = [batch]
    pre_activations = []
    hidden = batch
    n_layers = len(model.weights)
    for k, (w, b) in enumerate(zip(model.weights, model.biases)):
        pre = hidden @ w + b
        pre_activations.append(pre)
        if k < n_layers - 1:
            hidden = util.relu(pre)
            activations.append(hidden)
    probs = util.softmax(pre_activations[-1])
    return probs, activations, pre_activations


def forward(model, batch):
    """ Class probabilities for each row of `batch`.

    Args:
        model: MLP.
        batch: array of shape [batch_size, input_size].
    Returns:
        Array of shape [batch_size, label_size]; every row sums to one.
    """
    batch = _check_batch(model, batch)
    probs, _, _ = _forward_with_cache(model, batch)
    return probs


def backward(model, batch, label_ids, l2_weight=0.0):
    """ Gradient of mean cross entropy plus `l2_weight * ||params||^2`.

    Returns:
        (gradient, loss): gradient is a flat vector laid out like `flatten`.
    """
    batch = _check_batch(model, batch)
    label_ids = np.asarray(label_ids, dtype=np.int64)
    if label_ids.ndim != 1 or len(label_ids) != len(batch):
        raise ShapeError("Expect %d label ids, got shape %s." % (len(batch), label_ids.shape))
    if not len(batch):
        raise InsufficientDataError("Can't compute gradient on an empty batch.")
    if np.any(label_ids < 0) or np.any(label_ids >= model.label_size):
        raise ShapeError("Label ids should lie in [0, %d)." % model.label_size)

    n_inputs = len(batch)
    probs, activations, pre_activations = _forward_with_cache(model, batch)
    loss = float(np.mean(util.cross_entropy(probs, label_ids)))

    grads_w = [None] * len(model.weights)
    grads_b = [None] * len(model.biases)
    delta = (probs - util.one_hot(label_ids, model.label_size)) / n_inputs
    for k in range(len(model.weights) - 1, -1, -1):
        grads_w[k] = activations[k].T @ delta
        grads_b[k] = delta.sum(axis=0)
        if k > 0:
            delta = (delta @ model.weights[k].T) * (pre_activations[k - 1] > 0)

    gradient = np.concatenate([
        piece for gw, gb in zip(grads_w, grads_b) for piece in (gw.ravel(), gb)
    ])

    # L2 regularization
    if l2_weight:
        params = flatten(model)
        loss += float(l2_weight * np.dot(params, params))
        gradient = gradient + 2.0 * l2_weight * params

    return gradient, loss
