"""
Training configuration. Plain-text files hold one `key=value` per line
(`#` starts a comment); `.json5` files hold the same keys as an object.
Keys cover both TrainConfig and the GcnConfig architecture.
"""

import logging
from dataclasses import asdict, dataclass, fields

from tspgcn.errors import ConfigError
from tspgcn.model import GcnConfig
from tspgcn.utils.utils import parse_key_value, read_json5, read_lines

logger = logging.getLogger(__name__)

TRUE_WORDS = ("1", "true", "yes", "on")
FALSE_WORDS = ("0", "false", "no", "off")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 50
    subset_per_epoch: int = 10000
    batch_size: int = 20
    lr_initial: float = 0.001
    decay_factor: float = 1.01
    val_interval_epochs: int = 5
    seed: int = 1

    def __post_init__(self) -> None:
        for name in ("epochs", "subset_per_epoch", "batch_size", "val_interval_epochs"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.lr_initial > 0:
            raise ConfigError(f"lr_initial must be positive, got {self.lr_initial}")
        if not self.decay_factor > 1:
            raise ConfigError(f"decay_factor must be > 1, got {self.decay_factor}")

    def to_dict(self):
        return asdict(self)


def _coerce(field, raw, where):
    kind = type(field.default)
    if isinstance(raw, kind) and not (kind is int and isinstance(raw, bool)):
        return raw
    text = str(raw).strip()
    try:
        if kind is bool:
            if text.lower() in TRUE_WORDS:
                return True
            if text.lower() in FALSE_WORDS:
                return False
            raise ValueError(f"not a boolean: {text!r}")
        if kind is int:
            return int(text)
        return float(text)
    except ValueError as e:
        raise ConfigError(f"{where}: bad value for {field.name}: {e}") from e


def build_configs(values):
    train_fields = {f.name: f for f in fields(TrainConfig)}
    model_fields = {f.name: f for f in fields(GcnConfig)}
    train_kwargs, model_kwargs = {}, {}
    for key, (raw, where) in values.items():
        if key in train_fields:
            train_kwargs[key] = _coerce(train_fields[key], raw, where)
        elif key in model_fields:
            model_kwargs[key] = _coerce(model_fields[key], raw, where)
        else:
            raise ConfigError(f"{where}: unknown config key {key!r}")
    return TrainConfig(**train_kwargs), GcnConfig(**model_kwargs)


def load_train_config(path):
    """Return (TrainConfig, GcnConfig) read from `path`."""
    values = {}
    if str(path).endswith(".json5"):
        content = read_json5(path)
        if not isinstance(content, dict):
            raise ConfigError(f"{path}: expected an object at the top level")
        for key, raw in content.items():
            values[key] = (raw, f"{path}:{key}")
    else:
        for line_no, line in enumerate(read_lines(path), start=1):
            key, raw = parse_key_value(line)
            if key is None:
                continue
            where = f"{path}:{line_no}"
            if raw is None:
                raise ConfigError(f"{where}: expected key=value, got {line.strip()!r}")
            values[key] = (raw, where)
    train_config, model_config = build_configs(values)
    logger.info("loaded training config from %s", path)
    return train_config, model_config
