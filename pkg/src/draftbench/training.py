"""Offline pipelines that build the Bayes and network models from draft logs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .cards import CardSet
from .logs import DraftLog
from .models import BayesModel, NNetModel, bayes_from_counts, load_model, save_model
from .nnet import Adam, Network, TrainConfig, forward, init_network, loss_and_grad

__all__ = [
    "train_bayes",
    "train_nnet",
    "EpochMetric",
    "save_model",
    "load_model",
    "build_examples",
]


def _select_logs(logs: list[DraftLog], human_only: bool) -> list[DraftLog]:
    selected = [log for log in logs if not human_only or log.seat_kind == "human"]
    if not selected:
        raise ValueError(
            "empty training corpus"
            + (" after dropping bot seats (human_only=True)" if logs else "")
        )
    return selected


def train_bayes(logs: list[DraftLog], card_set: CardSet, human_only: bool = True) -> BayesModel:
    """Accumulate pairwise pick counts over every pick event and assemble the model.

    Per event: every unordered pair of distinct cards in the pack counts as seen
    together, the picked card counts as taken over each other pack card, and
    each (pack card, collection card) pair feeds the pool co-occurrence counts.
    Duplicates weigh by multiplicity.
    """
    selected = _select_logs(logs, human_only)
    size = card_set.size
    seen_together = np.zeros((size, size), dtype=np.int64)
    taken_over = np.zeros((size, size), dtype=np.int64)
    pool_seen = np.zeros((size, size), dtype=np.int64)
    pool_taken = np.zeros((size, size), dtype=np.int64)

    for log in selected:
        for event in log.pick_events(size):
            mult = Counter(event.pack)
            distinct = sorted(mult)
            counts = np.array([mult[c] for c in distinct], dtype=np.int64)
            block = np.ix_(distinct, distinct)
            seen_together[block] += np.outer(counts, counts)
            seen_together[distinct, distinct] -= counts * counts
            picked = event.picked
            taken_over[picked, distinct] += counts
            taken_over[picked, picked] -= mult[picked]

            pool_idx = event.collection_before.card_indices()
            if pool_idx:
                pool_counts = event.collection_before.counts[pool_idx]
                pool_seen[np.ix_(distinct, pool_idx)] += np.outer(counts, pool_counts)
                pool_taken[picked, pool_idx] += pool_counts
    return bayes_from_counts(card_set.code, seen_together, taken_over, pool_seen, pool_taken)


def build_examples(
    logs: list[DraftLog], card_set: CardSet, human_only: bool = True
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One training example per pick event: collection counts in, picked index out.

    Returns (inputs, targets, log_index) with log_index mapping rows back to logs
    so cross-validation can fold by draft instead of by event.
    """
    selected = _select_logs(logs, human_only)
    n = sum(len(log.picks) for log in selected)
    inputs = np.zeros((n, card_set.size), dtype=np.float32)
    targets = np.zeros(n, dtype=np.int64)
    log_index = np.zeros(n, dtype=np.int64)
    row = 0
    for li, log in enumerate(selected):
        for event in log.pick_events(card_set.size):
            inputs[row] = event.collection_before.counts
            targets[row] = event.picked
            log_index[row] = li
            row += 1
    return inputs, targets, log_index


@dataclass
class EpochMetric:
    fold: int  # 0-based fold, or -1 for the final full-data model
    epoch: int
    loss: float
    accuracy: float  # next-pick accuracy over the whole set (no pack mask)


def _train_network(
    inputs: np.ndarray,
    targets: np.ndarray,
    set_size: int,
    config: TrainConfig,
    eval_inputs: np.ndarray,
    eval_targets: np.ndarray,
    fold: int,
    seed: int,
    metrics: list[EpochMetric],
) -> Network:
    net = init_network(set_size, set_size, n_hidden=3, seed=seed)
    optimizer = Adam(net.parameters(), lr=config.learning_rate)
    rng = np.random.default_rng(seed + 1)
    n = inputs.shape[0]
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        losses = []
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = loss_and_grad(
                net, inputs[batch], targets[batch], rng=rng, update_running=True
            )
            optimizer.step(grads)
            losses.append(loss)
        metrics.append(
            EpochMetric(
                fold=fold,
                epoch=epoch,
                loss=float(np.mean(losses)),
                accuracy=next_pick_accuracy(net, eval_inputs, eval_targets),
            )
        )
    return net


def next_pick_accuracy(net: Network, inputs: np.ndarray, targets: np.ndarray,
                       batch_size: int = 4096) -> float:
    """Fraction of events where the top logit over the whole set is the pick."""
    hits = 0
    for start in range(0, inputs.shape[0], batch_size):
        logits, _ = forward(net, inputs[start : start + batch_size], mode="infer")
        hits += int((logits.argmax(axis=1) == targets[start : start + batch_size]).sum())
    return hits / max(1, inputs.shape[0])


def train_nnet(
    logs: list[DraftLog],
    card_set: CardSet,
    config: TrainConfig = TrainConfig(),
    human_only: bool = True,
    cross_validate: bool = False,
) -> tuple[NNetModel, list[EpochMetric]]:
    """Train the pick network; optionally report per-fold accuracy curves first.

    Cross-validation folds by draft log so a draft's events never straddle the
    fold boundary. The returned model is always trained on all provided data.
    """
    config.validate()
    inputs, targets, log_index = build_examples(logs, card_set, human_only)
    metrics: list[EpochMetric] = []

    if cross_validate:
        n_logs = int(log_index.max()) + 1
        fold_rng = np.random.default_rng(config.seed)
        fold_of_log = fold_rng.permutation(n_logs) % config.folds
        fold_of_row = fold_of_log[log_index]
        for fold in range(config.folds):
            held_out = fold_of_row == fold
            _train_network(
                inputs[~held_out],
                targets[~held_out],
                card_set.size,
                config,
                inputs[held_out],
                targets[held_out],
                fold=fold,
                seed=config.seed + 100 + fold,
                metrics=metrics,
            )

    net = _train_network(
        inputs, targets, card_set.size, config, inputs, targets,
        fold=-1, seed=config.seed, metrics=metrics,
    )
    return NNetModel(set_code=card_set.code, set_size=card_set.size, network=net), metrics


def metrics_to_csv(metrics: list[EpochMetric]) -> str:
    lines = ["fold,epoch,loss,accuracy"]
    for m in metrics:
        lines.append(f"{m.fold},{m.epoch},{m.loss:.6f},{m.accuracy:.6f}")
    return "\n".join(lines) + "\n"
