from tspgcn.autodiff import ops


def embed_nodes(store, coords):
    """alpha_i = A1 x_i + b1, (B, n, 2) -> (B, n, h)."""
    return ops.linear(coords, store["embed.node.A1"], store["embed.node.b1"])


def embed_edges(store, dist, knn):
    """
    beta_ij = concat(A2 d_ij + b2, A3 onehot(delta_ij)), each half h/2 wide.
    A3 is stored input-major, so a self edge (delta = 2) picks row 2 of A3.
    """
    distance_half = ops.linear(dist, store["embed.edge.A2"], store["embed.edge.b2"])
    knn_half = ops.linear(knn, store["embed.edge.A3"])
    return ops.concat([distance_half, knn_half], axis=-1)
