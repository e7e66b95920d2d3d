from tspgcn.train.config import TrainConfig, build_configs, load_train_config
from tspgcn.train.loop import (
    LOG_HEADER,
    ValidationResult,
    fit,
    last_checkpoint_path,
    maybe_decay_lr,
    train_epoch,
    validate,
)

__all__ = [
    "LOG_HEADER",
    "TrainConfig",
    "ValidationResult",
    "build_configs",
    "fit",
    "last_checkpoint_path",
    "load_train_config",
    "maybe_decay_lr",
    "train_epoch",
    "validate",
]
