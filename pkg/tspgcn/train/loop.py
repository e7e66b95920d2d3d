"""Training loop: epochs over random subsets, validation, LR decay, checkpoints."""

import logging
import math
import os
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from tspgcn.autodiff import adam_step, backward
from tspgcn.core import tour_length
from tspgcn.decode import decode_batch
from tspgcn.errors import InvalidArgumentError
from tspgcn.evalbench.metrics import mean_gap
from tspgcn.train.config import TrainConfig
from tspgcn.utils.utils import add_line, ensure_parent_dir

logger = logging.getLogger(__name__)

DECAY_THRESHOLD = 0.99
LOG_HEADER = "epoch,mean_loss,val_loss,val_gap,lr"
VAL_BATCH_SIZE = 64


@dataclass(frozen=True)
class ValidationResult:
    loss: float
    gap: float


def _batch(dataset, indices):
    records = [dataset.records[i] for i in indices]
    return [r[0] for r in records], [r[1] for r in records]


def train_epoch(model, dataset, config: TrainConfig, rng: np.random.Generator, lr=None, quiet=True) -> float:
    """
    Sample subset_per_epoch records (without replacement when the dataset is
    large enough), then run forward, loss, backward and one Adam step per
    mini-batch. Returns the mean mini-batch loss.
    """
    if len(dataset) == 0:
        raise InvalidArgumentError("cannot train on an empty dataset")
    lr = config.lr_initial if lr is None else lr
    count = config.subset_per_epoch
    indices = rng.choice(len(dataset), size=count, replace=len(dataset) < count)
    model.train()
    losses = []
    starts = range(0, count, config.batch_size)
    for start in tqdm(starts, desc="batches", unit="batch", leave=False, disable=quiet):
        instances, tours = _batch(dataset, indices[start : start + config.batch_size])
        loss = model.loss(instances, tours, training=True)
        losses.append(loss.item())
        backward(loss)
        adam_step(model.store, lr)
    return float(np.mean(losses))


def validate(model, val_dataset, batch_size=VAL_BATCH_SIZE, threads=1) -> ValidationResult:
    """Evaluation-mode mean loss and mean greedy optimality gap (percent) against stored tours."""
    if len(val_dataset) == 0:
        raise InvalidArgumentError("cannot validate on an empty dataset")
    if hasattr(model, "eval"):
        model.eval()
    total_loss = 0.0
    for start in range(0, len(val_dataset), batch_size):
        instances, tours = _batch(val_dataset, range(start, min(start + batch_size, len(val_dataset))))
        total_loss += model.loss(instances, tours, training=False).item() * len(instances)
    instances = val_dataset.instances
    predicted = decode_batch(model.heatmaps(instances), "greedy", threads=threads)
    pred_lens = [tour_length(instance, pred) for instance, pred in zip(instances, predicted)]
    opt_lens = [tour_length(instance, opt) for instance, opt in zip(instances, val_dataset.tours)]
    return ValidationResult(loss=total_loss / len(val_dataset), gap=mean_gap(pred_lens, opt_lens))


def maybe_decay_lr(current_val_loss, previous_val_loss, lr, decay_factor=1.01):
    """Divide lr by decay_factor unless the loss dropped by at least 1% since the last validation."""
    if previous_val_loss is None:
        return lr
    if current_val_loss >= DECAY_THRESHOLD * previous_val_loss:
        return lr / decay_factor
    return lr


def last_checkpoint_path(out_checkpoint):
    stem, ext = os.path.splitext(out_checkpoint)
    return f"{stem}.last{ext or '.ckpt'}"


def _fmt(value):
    return "nan" if math.isnan(value) else f"{value:.6f}"


def fit(model, train_set, val_set, config: TrainConfig, out_checkpoint, log_path=None, threads=1, quiet=True):
    """
    Train for config.epochs. Every val_interval_epochs (and after the last
    epoch) validate, apply the LR rule, save `<stem>.last.ckpt`, and save
    `out_checkpoint` when the validation loss is the best so far.
    """
    rng = np.random.default_rng(config.seed)
    lr = config.lr_initial
    previous_val_loss = None
    best_val_loss = math.inf
    history = []
    if log_path:
        ensure_parent_dir(log_path)
        with open(log_path, "w") as log_f:
            log_f.write(LOG_HEADER + "\n")

    for epoch in tqdm(range(1, config.epochs + 1), desc="epochs", unit="epoch", disable=quiet):
        mean_loss = train_epoch(model, train_set, config, rng, lr=lr, quiet=quiet)
        val_loss = val_gap = math.nan
        if epoch % config.val_interval_epochs == 0 or epoch == config.epochs:
            result = validate(model, val_set, threads=threads)
            val_loss, val_gap = result.loss, result.gap
            lr = maybe_decay_lr(val_loss, previous_val_loss, lr, config.decay_factor)
            previous_val_loss = val_loss
            model.save(last_checkpoint_path(out_checkpoint))
            if val_loss < best_val_loss:
                best_val_loss = val_loss
                model.save(out_checkpoint)
            logger.info("epoch %d: loss %.4f val_loss %.4f val_gap %.2f%% lr %.3g", epoch, mean_loss, val_loss, val_gap, lr)
        row = {"epoch": epoch, "mean_loss": mean_loss, "val_loss": val_loss, "val_gap": val_gap, "lr": lr}
        history.append(row)
        if log_path:
            add_line(f"{epoch},{_fmt(mean_loss)},{_fmt(val_loss)},{_fmt(val_gap)},{lr:.8g}\n", log_path)
    return history
