import numpy as np

from tspgcn.errors import InvalidArgumentError


def optimality_gap(pred_len, opt_len):
    """Percentage excess of pred_len over opt_len."""
    if not opt_len > 0:
        raise InvalidArgumentError(f"reference length must be positive, got {opt_len}")
    return (pred_len / opt_len - 1.0) * 100.0


def mean_gap(pred_lens, opt_lens):
    return float(np.mean([optimality_gap(p, o) for p, o in zip(pred_lens, opt_lens)]))
