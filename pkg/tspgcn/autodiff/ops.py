"""
Forward ops recorded on the tape. Only what the graph ConvNet needs:
linear, relu, sigmoid, concat, add/mul/div with broadcasting, reshape,
reduce_sum, neighbor_sum, batch_norm, softmax, log_softmax and gather.
"""

import logging

import numpy as np

from tspgcn.autodiff.tensor import Tensor, as_tensor
from tspgcn.errors import ShapeError

logger = logging.getLogger(__name__)

BN_MOMENTUM = 0.1
BN_EPSILON = 1e-5


def _label(t, fallback):
    return f"{t.name or fallback}{tuple(t.shape)}"


def _pair(a, b):
    if isinstance(a, Tensor) and not isinstance(b, Tensor):
        b = as_tensor(b, dtype=a.dtype)
    elif isinstance(b, Tensor) and not isinstance(a, Tensor):
        a = as_tensor(a, dtype=b.dtype)
    return as_tensor(a), as_tensor(b)


def _broadcast_check(a, b, op):
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(f"{op}: cannot broadcast {_label(a, 'lhs')} with {_label(b, 'rhs')}") from None


def _unbroadcast(grad, shape):
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def add(a, b) -> Tensor:
    a, b = _pair(a, b)
    _broadcast_check(a, b, "add")

    def grad_fn(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return Tensor(a.values + b.values, parents=(a, b), backward_fn=grad_fn, name="add")


def mul(a, b) -> Tensor:
    """Elementwise (Hadamard) product with broadcasting."""
    a, b = _pair(a, b)
    _broadcast_check(a, b, "mul")

    def grad_fn(g):
        return _unbroadcast(g * b.values, a.shape), _unbroadcast(g * a.values, b.shape)

    return Tensor(a.values * b.values, parents=(a, b), backward_fn=grad_fn, name="mul")


def div(a, b) -> Tensor:
    a, b = _pair(a, b)
    _broadcast_check(a, b, "div")
    out = a.values / b.values

    def grad_fn(g):
        return _unbroadcast(g / b.values, a.shape), _unbroadcast(-g * out / b.values, b.shape)

    return Tensor(out, parents=(a, b), backward_fn=grad_fn, name="div")


def reshape(x, shape) -> Tensor:
    x = as_tensor(x)
    try:
        out = x.values.reshape(shape)
    except ValueError:
        raise ShapeError(f"reshape: cannot view {_label(x, 'x')} as {tuple(shape)}") from None
    return Tensor(out, parents=(x,), backward_fn=lambda g: (g.reshape(x.shape),), name="reshape")


def linear(x, weight, bias=None) -> Tensor:
    """x @ weight (+ bias) over the last axis of x; weight is (in, out)."""
    x = as_tensor(x, dtype=weight.dtype)
    if x.shape[-1] != weight.shape[0]:
        raise ShapeError(f"linear: {_label(x, 'x')} does not match {_label(weight, 'weight')}")
    if bias is not None and bias.shape != (weight.shape[1],):
        raise ShapeError(f"linear: {_label(bias, 'bias')} does not match {_label(weight, 'weight')}")
    out = x.values @ weight.values
    if bias is not None:
        out = out + bias.values

    def grad_fn(g):
        flat_g = g.reshape(-1, g.shape[-1])
        grad_x = g @ weight.values.T
        grad_w = x.values.reshape(-1, x.shape[-1]).T @ flat_g
        if bias is None:
            return grad_x, grad_w
        return grad_x, grad_w, flat_g.sum(axis=0)

    parents = (x, weight) if bias is None else (x, weight, bias)
    return Tensor(out, parents=parents, backward_fn=grad_fn, name="linear")


def relu(x) -> Tensor:
    x = as_tensor(x)
    mask = x.values > 0
    return Tensor(x.values * mask, parents=(x,), backward_fn=lambda g: (g * mask,), name="relu")


def sigmoid(x) -> Tensor:
    x = as_tensor(x)
    out = 0.5 * (1.0 + np.tanh(0.5 * x.values))
    out = out.astype(x.dtype, copy=False)
    return Tensor(out, parents=(x,), backward_fn=lambda g: (g * out * (1.0 - out),), name="sigmoid")


def concat(tensors, axis=-1) -> Tensor:
    tensors = [as_tensor(t) for t in tensors]
    ndim = tensors[0].values.ndim
    axis = axis % ndim
    for t in tensors[1:]:
        other = [s for i, s in enumerate(t.shape) if i != axis]
        first = [s for i, s in enumerate(tensors[0].shape) if i != axis]
        if t.values.ndim != ndim or other != first:
            raise ShapeError(f"concat: {_label(tensors[0], 'first')} and {_label(t, 'other')} differ off axis {axis}")
    out = np.concatenate([t.values for t in tensors], axis=axis)
    cuts = np.cumsum([t.shape[axis] for t in tensors])[:-1]

    def grad_fn(g):
        return tuple(np.split(g, cuts, axis=axis))

    return Tensor(out, parents=tuple(tensors), backward_fn=grad_fn, name="concat")


def reduce_sum(x, axis=None, keepdims=False) -> Tensor:
    x = as_tensor(x)
    out = np.sum(x.values, axis=axis, keepdims=keepdims)

    def grad_fn(g):
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, x.shape),)

    return Tensor(np.asarray(out), parents=(x,), backward_fn=grad_fn, name="sum")


def neighbor_sum(gates, values) -> Tensor:
    """out[..., i, :] = sum_j gates[..., i, j, :] * values[..., j, :]."""
    gates, values = as_tensor(gates), as_tensor(values)
    if gates.values.ndim != values.values.ndim + 1 or gates.shape[:-3] != values.shape[:-2] \
            or gates.shape[-2] != values.shape[-2] or gates.shape[-1] != values.shape[-1]:
        raise ShapeError(f"neighbor_sum: {_label(gates, 'gates')} does not pair with {_label(values, 'values')}")
    out = np.einsum("...ijh,...jh->...ih", gates.values, values.values)

    def grad_fn(g):
        grad_gates = g[..., :, None, :] * values.values[..., None, :, :]
        grad_values = np.einsum("...ijh,...ih->...jh", gates.values, g)
        return grad_gates, grad_values

    return Tensor(out, parents=(gates, values), backward_fn=grad_fn, name="neighbor_sum")


def batch_norm(x, gamma, beta, running_mean, running_var, training,
               momentum=BN_MOMENTUM, eps=BN_EPSILON) -> Tensor:
    """
    Per-channel normalization over every axis but the last. In training mode
    the batch statistics are used and the running buffers (numpy arrays,
    updated in place) move by `momentum`; the running variance stores the
    unbiased estimate. Evaluation mode reads the running buffers only.
    """
    x = as_tensor(x)
    channels = x.shape[-1]
    if gamma.shape != (channels,) or beta.shape != (channels,) or running_mean.shape != (channels,):
        raise ShapeError(f"batch_norm: {_label(x, 'x')} does not match {_label(gamma, 'gamma')}")
    axes = tuple(range(x.values.ndim - 1))
    count = int(np.prod([x.shape[a] for a in axes]))

    if training:
        mean = x.values.mean(axis=axes)
        var = x.values.var(axis=axes)
        unbiased = var * count / (count - 1) if count > 1 else var
        running_mean *= 1.0 - momentum
        running_mean += momentum * mean
        running_var *= 1.0 - momentum
        running_var += momentum * unbiased
    else:
        mean, var = running_mean, running_var
    std = np.sqrt(var + eps).astype(x.dtype, copy=False)
    x_hat = ((x.values - mean) / std).astype(x.dtype, copy=False)
    out = gamma.values * x_hat + beta.values

    def grad_fn(g):
        grad_gamma = np.sum(g * x_hat, axis=axes)
        grad_beta = np.sum(g, axis=axes)
        d_hat = g * gamma.values
        if not training:
            return d_hat / std, grad_gamma, grad_beta
        sum_d = np.sum(d_hat, axis=axes)
        sum_dx = np.sum(d_hat * x_hat, axis=axes)
        grad_x = (count * d_hat - sum_d - x_hat * sum_dx) / (count * std)
        return grad_x, grad_gamma, grad_beta

    return Tensor(out, parents=(x, gamma, beta), backward_fn=grad_fn, name="batch_norm")


def softmax(x, axis=-1) -> Tensor:
    x = as_tensor(x)
    shifted = x.values - np.max(x.values, axis=axis, keepdims=True)
    exp = np.exp(shifted)
    out = exp / np.sum(exp, axis=axis, keepdims=True)

    def grad_fn(g):
        return (out * (g - np.sum(g * out, axis=axis, keepdims=True)),)

    return Tensor(out, parents=(x,), backward_fn=grad_fn, name="softmax")


def log_softmax(x, axis=-1) -> Tensor:
    x = as_tensor(x)
    shifted = x.values - np.max(x.values, axis=axis, keepdims=True)
    out = shifted - np.log(np.sum(np.exp(shifted), axis=axis, keepdims=True))

    def grad_fn(g):
        return (g - np.exp(out) * np.sum(g, axis=axis, keepdims=True),)

    return Tensor(out, parents=(x,), backward_fn=grad_fn, name="log_softmax")


def gather(x, index) -> Tensor:
    """out[...] = x[..., index[...]] along the last axis."""
    x = as_tensor(x)
    index = np.asarray(index, dtype=np.int64)
    if index.shape != x.shape[:-1]:
        raise ShapeError(f"gather: index{index.shape} does not match {_label(x, 'x')} without its last axis")
    out = np.take_along_axis(x.values, index[..., None], axis=-1)[..., 0]

    def grad_fn(g):
        grad_x = np.zeros_like(x.values)
        np.put_along_axis(grad_x, index[..., None], g[..., None], axis=-1)
        return (grad_x,)

    return Tensor(out, parents=(x,), backward_fn=grad_fn, name="gather")
