"""Co-draft statistics and the 2D synergy embedding.

Two cards are synergistic when they end up in the same final 45-card pool more
often than independent drafting would predict. The lift matrix captures that
ratio; distances derived from it are projected to the plane by maximizing the
Pearson correlation between true and embedded distances.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cards import CardSet
from .logs import DraftLog

log = logging.getLogger(__name__)


@dataclass
class SynergyStats:
    """Collection-frequency statistics over a corpus of finished drafts.

    single_rate and pair_rate cover the full set; lift and distance are
    restricted to ``kept`` (cards that were drafted at least once).
    """

    n_collections: int
    single_rate: np.ndarray  # (S,) fraction of pools containing the card
    pair_rate: np.ndarray  # (S, S) fraction of pools containing both cards
    kept: np.ndarray  # indices with single_rate > 0, ascending
    dropped: np.ndarray  # indices never drafted
    lift: np.ndarray  # (K, K) pair_rate / (single_rate x single_rate)
    distance: np.ndarray  # (K, K) 1 - lift / max(lift)


def cooccurrence(logs: list[DraftLog], card_set: CardSet, human_only: bool = False) -> SynergyStats:
    selected = [l for l in logs if not human_only or l.seat_kind == "human"]
    if not selected:
        raise ValueError("empty corpus" + (" after human-only filter" if logs else ""))
    size = card_set.size
    present = np.zeros((len(selected), size), dtype=np.float64)
    for row, dlog in enumerate(selected):
        present[row, dlog.final_collection(size).counts > 0] = 1.0
    n = len(selected)
    single_rate = present.sum(axis=0) / n
    pair_rate = (present.T @ present) / n

    kept = np.nonzero(single_rate > 0)[0]
    dropped = np.nonzero(single_rate == 0)[0]
    if dropped.size:
        log.warning(
            "%d cards were never drafted and are dropped from lift/distance: %s",
            dropped.size,
            [card_set[int(i)].name for i in dropped[:10]],
        )
    p = single_rate[kept]
    lift = pair_rate[np.ix_(kept, kept)] / np.outer(p, p)
    distance = 1.0 - lift / lift.max()
    return SynergyStats(
        n_collections=n,
        single_rate=single_rate,
        pair_rate=pair_rate,
        kept=kept,
        dropped=dropped,
        lift=lift,
        distance=distance,
    )


@dataclass
class Embedding:
    coords: np.ndarray  # (K, 2)
    pearson_r: float
    iterations: int


def _pair_distances(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff**2).sum(axis=2))


def pearson_to_distances(distance: np.ndarray, coords: np.ndarray) -> float:
    """Pearson r between true and embedded distances over off-diagonal pairs."""
    iu = np.triu_indices(distance.shape[0], k=1)
    t = distance[iu]
    e = _pair_distances(coords)[iu]
    t_c = t - t.mean()
    e_c = e - e.mean()
    denom = np.sqrt((t_c**2).sum() * (e_c**2).sum())
    if denom == 0:
        return 0.0
    return float((t_c * e_c).sum() / denom)


def _pearson_gradient(distance: np.ndarray, coords: np.ndarray) -> tuple[float, np.ndarray]:
    n = distance.shape[0]
    emb = _pair_distances(coords)
    iu = np.triu_indices(n, k=1)
    t = distance[iu]
    e = emb[iu]
    t_c = t - t.mean()
    e_c = e - e.mean()
    b = np.sqrt((t_c**2).sum())
    c = np.sqrt((e_c**2).sum())
    if b == 0 or c == 0:
        return 0.0, np.zeros_like(coords)
    a = (t_c * e_c).sum()
    r = a / (b * c)
    # d r / d e_k for each unordered pair, then chain through the Euclidean norm.
    dr_de = (t_c - (a / c**2) * e_c) / (b * c)
    weight = np.zeros((n, n))
    weight[iu] = dr_de
    weight = weight + weight.T
    safe = emb + np.eye(n)  # diagonal never used; avoids 0/0
    ratio = weight / safe
    grad = coords * ratio.sum(axis=1, keepdims=True) - ratio @ coords
    return float(r), grad


def _classical_mds_init(distance: np.ndarray) -> np.ndarray:
    """Double-centered eigendecomposition of squared distances (2 components)."""
    n = distance.shape[0]
    centering = np.eye(n) - np.ones((n, n)) / n
    gram = -0.5 * centering @ (distance**2) @ centering
    eigvals, eigvecs = np.linalg.eigh(gram)
    top = np.argsort(eigvals)[::-1][:2]
    scale = np.sqrt(np.maximum(eigvals[top], 0.0))
    return eigvecs[:, top] * scale


def embed_2d(
    distance: np.ndarray,
    seed: int = 0,
    iters: int = 5000,
    tol: float = 1e-6,
    init: str = "mds",
) -> Embedding:
    """Project a distance matrix to the plane, maximizing Pearson correlation.

    Plain gradient ascent with an adaptive step: a step that would lower r is
    rejected and the step size halved, so reported r never decreases.
    """
    distance = np.asarray(distance, dtype=np.float64)
    n = distance.shape[0]
    if distance.shape != (n, n):
        raise ValueError("distance matrix must be square")
    if not np.isfinite(distance).all():
        raise ValueError("distance matrix contains non-finite entries")
    if not np.allclose(distance, distance.T, atol=1e-9):
        raise ValueError("distance matrix must be symmetric")
    if n < 3:
        raise ValueError("need at least 3 points to embed")

    rng = np.random.default_rng(seed)
    if init == "mds":
        coords = _classical_mds_init(distance)
        if not np.isfinite(coords).all() or np.allclose(coords, 0):
            coords = rng.standard_normal((n, 2))
    elif init == "random":
        coords = rng.standard_normal((n, 2))
    else:
        raise ValueError(f"unknown init {init!r}")

    r, grad = _pearson_gradient(distance, coords)
    scale = max(np.abs(coords).max(), 1.0)
    step = 0.1 * scale / max(np.abs(grad).max(), 1e-12)
    done = 0
    for done in range(1, iters + 1):
        candidate = coords + step * grad
        r_new = pearson_to_distances(distance, candidate)
        if r_new > r:
            improved_by = r_new - r
            coords = candidate
            r, grad = _pearson_gradient(distance, coords)
            step *= 1.2
            if improved_by < tol:
                break
        else:
            step *= 0.5
            if step < 1e-14:
                break
    return Embedding(coords=coords, pearson_r=r, iterations=done if iters > 0 else 0)


def export_plot_data(
    stats: SynergyStats, embedding: Embedding, card_set: CardSet, path: str | Path
) -> None:
    """CSV of (name, color class, x, y) for the embedded cards."""
    if embedding.coords.shape[0] != stats.kept.size:
        raise ValueError("embedding does not match the kept-card count")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "color", "x", "y"])
    for row, card_index in enumerate(stats.kept):
        card = card_set[int(card_index)]
        x, y = embedding.coords[row]
        writer.writerow([card.name, card.color_class(), repr(float(x)), repr(float(y))])
    Path(path).write_text(buf.getvalue())
