import numpy as np

from tspgcn.core import knn_indicator, pairwise_distances, tour_to_adjacency
from tspgcn.errors import InvalidArgumentError


def prepare_batch(instances, config, tours=None, dtype=np.float32):
    """
    Stack instances into network inputs:
      coords  (B, n, 2)     node coordinates
      dist    (B, n, n, 1)  Euclidean edge lengths
      knn     (B, n, n, 3)  one-hot of the {0, 1, 2} k-NN indicator
      targets (B, n, n)     tour adjacency, only when tours are given
    """
    if not instances:
        raise InvalidArgumentError("cannot build an empty batch")
    n = instances[0].n
    if any(instance.n != n for instance in instances):
        raise InvalidArgumentError("all instances of a batch must have the same size")
    k = config.neighbors(n)
    coords = np.stack([instance.coords for instance in instances]).astype(dtype)
    dist = np.stack([pairwise_distances(instance) for instance in instances])[..., None].astype(dtype)
    indicator = np.stack([knn_indicator(instance, k) for instance in instances])
    knn = np.eye(3, dtype=dtype)[indicator]
    batch = {"coords": coords, "dist": dist, "knn": knn}
    if tours is not None:
        batch["targets"] = np.stack([tour_to_adjacency(tour).entries for tour in tours]).astype(np.int64)
    return batch


def offdiag_mask(n, dtype=np.float32):
    return (1.0 - np.eye(n, dtype=dtype))[:, :, None]
