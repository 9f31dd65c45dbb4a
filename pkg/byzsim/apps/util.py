""" Commonly-used modeling methods. """

import math

import numpy as np


def relu(x):
    return np.maximum(x, 0.0)


def softmax(logits):
    """ Row-wise softmax, shifted by the row max for stability. """
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exps = np.exp(shifted)
    return exps / np.sum(exps, axis=-1, keepdims=True)


def one_hot(label_ids, label_size):
    out = np.zeros((len(label_ids), label_size), dtype=np.float64)
    out[np.arange(len(label_ids)), label_ids] = 1.0
    return out


def cross_entropy(probs, label_ids):
    """ Per-example cross entropy of class-index targets. """
    picked = probs[np.arange(len(label_ids)), label_ids]
    return -np.log(np.maximum(picked, 1e-300))


def uniform_fan_in_initializer(rng, fan_in, fan_out):
    """ Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)]. """
    limit = 1.0 / math.sqrt(fan_in)
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))
