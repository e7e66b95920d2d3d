import logging

import numpy as np

from tspgcn.autodiff import ParamStore, load_checkpoint, save_checkpoint
from tspgcn.errors import CheckpointError, ConfigError
from tspgcn.model.classifier import NUM_CLASSES, mlp_classify, weighted_loss
from tspgcn.model.config import GcnConfig
from tspgcn.model.embedding import embed_edges, embed_nodes
from tspgcn.model.inputs import offdiag_mask, prepare_batch
from tspgcn.model.layers import gcn_layer

logger = logging.getLogger(__name__)

EVAL_BATCH_SIZE = 64


def _affine(store, rng, name, fan_in, fan_out, bias_name=None):
    limit = np.sqrt(1.0 / fan_in)
    store.add(name, rng.uniform(-limit, limit, size=(fan_in, fan_out)))
    if bias_name is not None:
        store.add(bias_name, rng.uniform(-limit, limit, size=(fan_out,)))


def _norm_params(store, prefix, h):
    store.add(f"{prefix}.gamma", np.ones(h))
    store.add(f"{prefix}.beta", np.zeros(h))
    store.add_buffer(f"{prefix}.running_mean", np.zeros(h))
    store.add_buffer(f"{prefix}.running_var", np.ones(h))


def init_params(config: GcnConfig, seed: int = 0, dtype=np.float32) -> ParamStore:
    """Affine maps start uniform in +-sqrt(1/fan_in); batch norm starts as identity."""
    rng = np.random.default_rng(seed)
    store = ParamStore(dtype)
    h, half = config.h, config.h // 2
    _affine(store, rng, "embed.node.A1", 2, h, "embed.node.b1")
    _affine(store, rng, "embed.edge.A2", 1, half, "embed.edge.b2")
    _affine(store, rng, "embed.edge.A3", 3, half)
    for layer in range(config.l_conv):
        for w in ("W1", "W2", "W3", "W4", "W5"):
            _affine(store, rng, f"gcn.{layer}.{w}", h, h)
        if config.batch_norm:
            _norm_params(store, f"gcn.{layer}.bn_node", h)
            _norm_params(store, f"gcn.{layer}.bn_edge", h)
    for i in range(config.l_mlp - 1):
        _affine(store, rng, f"mlp.{i}.weight", h, h, f"mlp.{i}.bias")
    _affine(store, rng, "mlp.out.weight", h, NUM_CLASSES, "mlp.out.bias")
    return store


class GcnModel(object):
    """Graph ConvNet mapping a batch of instances to edge logits and heat-maps."""

    def __init__(self, config: GcnConfig = None, seed: int = 0, dtype=np.float32, store: ParamStore = None) -> None:
        self.config = config or GcnConfig()
        self.seed = seed
        self.store = store if store is not None else init_params(self.config, seed, dtype)
        self.training = True

    def train(self):
        self.training = True
        return self

    def eval(self):
        self.training = False
        return self

    def forward_batch(self, batch, training=None):
        """Run the network on prepared inputs; returns (logits tensor, heat-map array)."""
        training = self.training if training is None else training
        n = batch["coords"].shape[-2]
        mask = offdiag_mask(n, self.store.dtype)
        x = embed_nodes(self.store, batch["coords"])
        e = embed_edges(self.store, batch["dist"], batch["knn"])
        for layer in range(self.config.l_conv):
            x, e = gcn_layer(self.store, layer, x, e, self.config, training, mask)
        return mlp_classify(self.store, e, self.config)

    def prepare(self, instances, tours=None):
        return prepare_batch(instances, self.config, tours, dtype=self.store.dtype)

    def forward(self, instances, training=None):
        return self.forward_batch(self.prepare(instances), training)

    def loss(self, instances, tours, training=None):
        batch = self.prepare(instances, tours)
        logits, _ = self.forward_batch(batch, training)
        return weighted_loss(logits, batch["targets"])

    def heatmaps(self, instances, batch_size=EVAL_BATCH_SIZE):
        """Evaluation-mode heat-maps, (N, n, n), in instance order."""
        chunks = []
        for start in range(0, len(instances), batch_size):
            _, probs = self.forward(instances[start : start + batch_size], training=False)
            chunks.append(probs)
        return np.concatenate(chunks, axis=0)

    def to_dict(self):
        return {"model": self.config.to_dict(), "seed": self.seed}

    def save(self, path):
        save_checkpoint(self.store, self.to_dict(), path)

    @classmethod
    def load(cls, path, dtype=np.float32):
        store, header = load_checkpoint(path, dtype)
        try:
            config = GcnConfig.from_dict(header["model"])
        except (KeyError, TypeError, ConfigError) as e:
            raise CheckpointError(f"{path}: invalid model header: {e}") from e
        expected = set(init_params(config, 0, dtype).params)
        if expected != set(store.params):
            raise CheckpointError(f"{path}: parameters do not match the architecture in its header")
        return cls(config, seed=int(header.get("seed", 0)), store=store)
