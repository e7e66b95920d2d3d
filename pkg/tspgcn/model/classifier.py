"""MLP edge classifier, heat-map extraction and the class-weighted loss."""

import logging

import numpy as np

from tspgcn.autodiff import ops

logger = logging.getLogger(__name__)

NUM_CLASSES = 2


def mlp_classify(store, e, config):
    """
    l_mlp - 1 hidden affine+ReLU layers of width h, then an affine map to two
    logits per directed edge. Returns (logits tensor, heat-map array) where
    the heat-map is the class-1 softmax probability with a zeroed diagonal.
    """
    hidden = e
    for i in range(config.l_mlp - 1):
        hidden = ops.relu(ops.linear(hidden, store[f"mlp.{i}.weight"], store[f"mlp.{i}.bias"]))
    logits = ops.linear(hidden, store["mlp.out.weight"], store["mlp.out.bias"])
    return logits, heatmap_from_logits(logits.values)


def heatmap_from_logits(logits):
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    probs = (exp[..., 1] / np.sum(exp, axis=-1)).astype(np.float64)
    n = probs.shape[-1]
    probs[..., np.arange(n), np.arange(n)] = 0.0
    return probs


def class_weights(n):
    """Balanced weights: w0 = n^2 / ((n^2 - 2n) c), w1 = n^2 / (2n c), c = 2."""
    c = NUM_CLASSES
    return n * n / ((n * n - 2 * n) * c), n * n / ((2 * n) * c)


def weighted_loss(logits, targets):
    """
    Class-weighted cross-entropy, weighted per edge, then averaged over the
    n(n-1) off-diagonal directed edges and over the batch.
    """
    targets = np.asarray(targets, dtype=np.int64)
    batch, n = targets.shape[0], targets.shape[-1]
    w0, w1 = class_weights(n)
    weights = np.where(targets == 1, w1, w0) * (1.0 - np.eye(n))
    coefficient = (-weights / (batch * n * (n - 1))).astype(logits.dtype)
    picked = ops.gather(ops.log_softmax(logits, axis=-1), targets)
    return ops.reduce_sum(ops.mul(picked, coefficient))
