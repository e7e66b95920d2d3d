"""
Define-by-run reverse-mode differentiation.

Every op returns a Tensor that remembers its parents and a closure mapping
the output gradient to one gradient per parent. `backward` walks the tape
once; afterwards the tape is released and a second call raises StateError.
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np

from tspgcn.errors import InvalidArgumentError, StateError

logger = logging.getLogger(__name__)


class Tensor(object):
    def __init__(
        self,
        values,
        requires_grad: bool = False,
        parents: Sequence["Tensor"] = (),
        backward_fn: Optional[Callable] = None,
        name: str = "",
    ) -> None:
        self.values = np.ascontiguousarray(values)
        self.grad = None
        self.name = name
        self.requires_grad = bool(requires_grad) or any(p.requires_grad for p in parents)
        self._parents = tuple(parents) if self.requires_grad else ()
        self._backward_fn = backward_fn if self.requires_grad else None
        self._consumed = False

    @property
    def shape(self):
        return self.values.shape

    @property
    def dtype(self):
        return self.values.dtype

    @property
    def size(self):
        return self.values.size

    @property
    def is_leaf(self):
        return self._backward_fn is None

    def detach(self) -> "Tensor":
        return Tensor(self.values, requires_grad=False, name=self.name)

    def item(self) -> float:
        return float(self.values.reshape(-1)[0])

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        backward(self)

    def __repr__(self) -> str:
        return f"Tensor(name={self.name!r}, shape={self.shape}, dtype={self.dtype}, requires_grad={self.requires_grad})"


def as_tensor(value, dtype=None) -> Tensor:
    if isinstance(value, Tensor):
        return value
    return Tensor(np.asarray(value, dtype=dtype))


def _topological_order(root):
    order, seen = [], set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if id(parent) not in seen:
                stack.append((parent, False))
    return order


def backward(loss: Tensor) -> None:
    if loss.size != 1:
        raise InvalidArgumentError(f"backward needs a scalar loss, got shape {loss.shape}")
    if loss._consumed:
        raise StateError("backward already ran on this loss; run the forward pass again")
    if not loss.requires_grad:
        raise StateError("loss does not depend on any tensor that requires a gradient")

    order = _topological_order(loss)
    grads = {id(loss): np.ones_like(loss.values)}
    for node in reversed(order):
        grad = grads.pop(id(node), None)
        if grad is None:
            continue
        if node.is_leaf:
            node.grad = grad.copy() if node.grad is None else node.grad + grad
            continue
        for parent, parent_grad in zip(node._parents, node._backward_fn(grad)):
            if parent_grad is None or not parent.requires_grad:
                continue
            if id(parent) in grads:
                grads[id(parent)] = grads[id(parent)] + parent_grad
            else:
                grads[id(parent)] = parent_grad

    for node in order:
        if not node.is_leaf:
            node._parents = ()
            node._backward_fn = None
            node.requires_grad = False
    loss._consumed = True
