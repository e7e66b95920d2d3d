import logging
from dataclasses import asdict, dataclass, fields

from tspgcn.errors import ConfigError

logger = logging.getLogger(__name__)

GATE_EPSILON = 1e-20


@dataclass(frozen=True)
class GcnConfig:
    """Architecture knobs. Defaults are the desk-scale network."""

    l_conv: int = 8
    l_mlp: int = 3
    h: int = 64
    k: int = 20
    epsilon_gate: float = GATE_EPSILON
    batch_norm: bool = True

    def __post_init__(self) -> None:
        if self.l_conv < 1:
            raise ConfigError(f"l_conv must be >= 1, got {self.l_conv}")
        if self.l_mlp < 1:
            raise ConfigError(f"l_mlp must be >= 1, got {self.l_mlp}")
        if self.h < 2 or self.h % 2 != 0:
            raise ConfigError(f"h must be a positive even width, got {self.h}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if not self.epsilon_gate > 0:
            raise ConfigError(f"epsilon_gate must be positive, got {self.epsilon_gate}")

    def neighbors(self, n):
        """k clipped to n - 1 for an instance of n nodes."""
        return min(self.k, n - 1)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, values):
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError(f"unknown model config keys: {sorted(unknown)}")
        return cls(**values)


FULL_SCALE_CONFIG = GcnConfig(l_conv=30, l_mlp=3, h=300, k=20)
