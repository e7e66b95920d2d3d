from tspgcn.autodiff import ops
from tspgcn.autodiff.checkpoint import load_checkpoint, save_checkpoint
from tspgcn.autodiff.params import ParamStore, adam_step
from tspgcn.autodiff.tensor import Tensor, as_tensor, backward

__all__ = [
    "ParamStore",
    "Tensor",
    "adam_step",
    "as_tensor",
    "backward",
    "load_checkpoint",
    "ops",
    "save_checkpoint",
]
