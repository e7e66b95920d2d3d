"""Residual gated graph convolution layer over a dense graph."""

from tspgcn.autodiff import ops


def edge_gates(e, mask, epsilon):
    """
    eta_ij = sigmoid(e_ij) / (sum_{j' != i} sigmoid(e_ij') + epsilon), per channel.
    `mask` zeroes self edges so node i never gates itself.
    """
    gates = ops.mul(ops.sigmoid(e), mask)
    return ops.div(gates, ops.add(ops.reduce_sum(gates, axis=-2, keepdims=True), epsilon))


def normalize(store, prefix, x, config, training):
    if not config.batch_norm:
        return x
    return ops.batch_norm(
        x,
        store[f"{prefix}.gamma"],
        store[f"{prefix}.beta"],
        store.buffers[f"{prefix}.running_mean"],
        store.buffers[f"{prefix}.running_var"],
        training,
    )


def gcn_layer(store, layer, x, e, config, training, mask):
    """
    x_i <- x_i + ReLU(BN(W1 x_i + sum_j eta_ij * W2 x_j))
    e_ij <- e_ij + ReLU(BN(W3 e_ij + W4 x_i + W5 x_j))
    """
    p = f"gcn.{layer}"
    eta = edge_gates(e, mask, config.epsilon_gate)
    node_msg = ops.add(ops.linear(x, store[f"{p}.W1"]), ops.neighbor_sum(eta, ops.linear(x, store[f"{p}.W2"])))
    x_next = ops.add(x, ops.relu(normalize(store, f"{p}.bn_node", node_msg, config, training)))

    lead, n, h = x.shape[:-2], x.shape[-2], x.shape[-1]
    from_i = ops.reshape(ops.linear(x, store[f"{p}.W4"]), lead + (n, 1, h))
    from_j = ops.reshape(ops.linear(x, store[f"{p}.W5"]), lead + (1, n, h))
    edge_msg = ops.add(ops.add(ops.linear(e, store[f"{p}.W3"]), from_i), from_j)
    e_next = ops.add(e, ops.relu(normalize(store, f"{p}.bn_edge", edge_msg, config, training)))
    return x_next, e_next
