import logging
from typing import Dict

import numpy as np

from tspgcn.autodiff.tensor import Tensor
from tspgcn.errors import ConfigError, InvalidArgumentError, StateError

logger = logging.getLogger(__name__)

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8


class ParamStore(object):
    """Named trainable tensors, non-trainable buffers and Adam state."""

    def __init__(self, dtype=np.float32) -> None:
        self.dtype = np.dtype(dtype)
        self.params: Dict[str, Tensor] = {}
        self.buffers: Dict[str, np.ndarray] = {}
        self.adam_m: Dict[str, np.ndarray] = {}
        self.adam_v: Dict[str, np.ndarray] = {}
        self.step = 0

    def add(self, name, values) -> Tensor:
        if name in self.params:
            raise ConfigError(f"parameter {name!r} registered twice")
        values = np.array(values, dtype=self.dtype)
        param = Tensor(values, requires_grad=True, name=name)
        self.params[name] = param
        self.adam_m[name] = np.zeros_like(values)
        self.adam_v[name] = np.zeros_like(values)
        return param

    def add_buffer(self, name, values) -> np.ndarray:
        if name in self.buffers:
            raise ConfigError(f"buffer {name!r} registered twice")
        self.buffers[name] = np.array(values, dtype=self.dtype)
        return self.buffers[name]

    def __getitem__(self, name) -> Tensor:
        return self.params[name]

    def zero_grad(self) -> None:
        for param in self.params.values():
            param.grad = None

    def num_parameters(self) -> int:
        return int(sum(p.size for p in self.params.values()))


def adam_step(store: ParamStore, lr: float) -> None:
    """
    One Adam update over every parameter holding a gradient; parameters the
    loss never reached are left untouched. Gradients are cleared afterwards.
    """
    if lr <= 0:
        raise InvalidArgumentError(f"learning rate must be positive, got {lr}")
    with_grad = [name for name, param in store.params.items() if param.grad is not None]
    if not with_grad:
        raise StateError("adam_step called before backward populated any gradient")

    store.step += 1
    bias1 = 1.0 - ADAM_BETA1 ** store.step
    bias2 = 1.0 - ADAM_BETA2 ** store.step
    for name in with_grad:
        param = store.params[name]
        grad = param.grad.astype(store.dtype, copy=False)
        m, v = store.adam_m[name], store.adam_v[name]
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * grad
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * (grad * grad)
        update = (lr / bias1) * m / (np.sqrt(v / bias2) + ADAM_EPSILON)
        param.values -= update.astype(store.dtype, copy=False)
    store.zero_grad()
