from tspgcn.model.classifier import class_weights, heatmap_from_logits, mlp_classify, weighted_loss
from tspgcn.model.config import FULL_SCALE_CONFIG, GcnConfig
from tspgcn.model.embedding import embed_edges, embed_nodes
from tspgcn.model.heatmap import HeatMap
from tspgcn.model.inputs import offdiag_mask, prepare_batch
from tspgcn.model.layers import edge_gates, gcn_layer
from tspgcn.model.network import GcnModel, init_params

__all__ = [
    "FULL_SCALE_CONFIG",
    "GcnConfig",
    "GcnModel",
    "HeatMap",
    "class_weights",
    "edge_gates",
    "embed_edges",
    "embed_nodes",
    "gcn_layer",
    "heatmap_from_logits",
    "init_params",
    "mlp_classify",
    "offdiag_mask",
    "prepare_batch",
    "weighted_loss",
]
