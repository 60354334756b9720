"""The five drafting agents behind one ranking interface.

Every agent exposes ``rank(pack, collection, global_pick) -> AgentRanking``:
one score per pack entry, and the chosen card = highest score with exact ties
resolved by lowest card index. Choices depend on card identity only, never on
pack position, so reordering a pack cannot change the pick.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .cards import CardSet, Collection
from .models import BayesModel, NNetModel
from .nnet import forward


@dataclass
class AgentRanking:
    scores: list[float]
    chosen: int


class AgentError(ValueError):
    pass


def choose_from_scores(pack: list[int], scores: list[float]) -> int:
    """Highest score wins; exact score ties go to the lowest card index."""
    best = max(scores)
    return min(card for card, score in zip(pack, scores) if score == best)


def _ranking(pack: list[int], score_of: dict[int, float]) -> AgentRanking:
    scores = [float(score_of[c]) for c in pack]
    return AgentRanking(scores=scores, chosen=choose_from_scores(pack, scores))


class RandomAgent:
    """Scores every pack card with an independent uniform draw."""

    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        if not pack:
            raise AgentError("empty pack")
        # One draw per distinct card in index order keeps the choice a function
        # of card identity, not of how the pack happens to be ordered.
        score_of = {card: self.rng.random() for card in sorted(set(pack))}
        return _ranking(pack, score_of)


class RaredraftAgent:
    """Takes the rarest card; rarity ties prefer the collection's top color."""

    name = "raredraft"

    def __init__(self, card_set: CardSet, seed: int = 0):
        self.card_set = card_set
        self.rng = random.Random(seed)

    def _dominant_color(self, collection: Collection) -> int | None:
        counts = collection.counts
        per_color = (self.card_set.color_matrix > 0).T @ counts  # copies holding each color
        if per_color.max() == 0:
            return None
        return int(per_color.argmax())  # argmax breaks ties toward W < U < B < R < G

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        if not pack:
            raise AgentError("empty pack")
        distinct = sorted(set(pack))
        rarities = {c: int(self.card_set[c].rarity) for c in distinct}
        top = max(rarities.values())
        candidates = [c for c in distinct if rarities[c] == top]
        color = self._dominant_color(collection)
        if color is not None:
            on_color = [c for c in candidates if self.card_set[c].colors[color] > 0]
            if on_color:
                candidates = on_color
        chosen = candidates[self.rng.randrange(len(candidates))] if len(candidates) > 1 else candidates[0]
        score_of = {c: float(rarities[c]) for c in distinct}
        score_of[chosen] += 0.5
        return _ranking(pack, score_of)


@dataclass(frozen=True)
class HeuristicParams:
    """Tuning constants for the expert-heuristic agent."""

    strength_floor: float = 2.0
    commit_slope: float = 0.257
    speculation_cap: float = 0.9
    multicolor_penalty: float = 0.6
    commit_threshold: float = 3.5
    oncolor_bonus: float = 2.0
    offcolor_symbol_penalty: float = 1.0
    phase_switch_pick: int = 19
    # Literal reading of the bonus formula (max instead of cap-at-0.9).
    literal_max_bonus: bool = False


class DraftsimAgent:
    """Expert strength ratings plus a color-affinity bonus that hardens over time.

    Early on (the speculation phase) single-color cards get a bonus proportional
    to how invested the seat already is in that color, capped at 0.9; colorless
    cards inherit the best single-color bonus; 2-3 color cards pay for their
    off colors plus a flat multicolor penalty; 4-5 color cards get no bonus.
    Once two colors are committed (color investment above 3.5) or the deadline
    pick arrives, the two strongest colors become primary: cards whose colored
    symbols are all primary get +2.0, anything else loses 1.0 per off-color
    symbol beyond the first.
    """

    name = "draftsim"

    def __init__(self, card_set: CardSet, params: HeuristicParams = HeuristicParams()):
        self.card_set = card_set
        self.params = params
        self._pull = np.maximum(0.0, card_set.strengths - params.strength_floor)
        self._has_color = card_set.color_matrix > 0

    def color_commitment(self, collection: Collection) -> np.ndarray:
        """Per-color sum of above-floor strength over the collection."""
        weighted = collection.counts * self._pull
        return self._has_color.T @ weighted

    def _speculation_bonus(self, commit: np.ndarray, card_colors) -> float:
        p = self.params
        raw = p.commit_slope * commit
        per_color = np.maximum(raw, p.speculation_cap) if p.literal_max_bonus \
            else np.minimum(raw, p.speculation_cap)
        on = [i for i in range(5) if card_colors[i] > 0]
        if len(on) == 0:
            return float(per_color.max())
        if len(on) == 1:
            return float(per_color[on[0]])
        if len(on) <= 3:
            off = [i for i in range(5) if i not in on]
            return float(per_color[on].sum() - per_color[off].sum() - p.multicolor_penalty)
        return 0.0

    def _committed_bonus(self, primary: list[int], card_colors) -> float:
        p = self.params
        off_symbols = sum(card_colors[i] for i in range(5) if i not in primary)
        if off_symbols == 0:
            return p.oncolor_bonus
        return -p.offcolor_symbol_penalty * max(0, off_symbols - 1)

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        if not pack:
            raise AgentError("empty pack")
        p = self.params
        commit = self.color_commitment(collection)
        committed_colors = int((commit > p.commit_threshold).sum())
        committed_phase = committed_colors >= 2 or global_pick >= p.phase_switch_pick
        if committed_phase:
            # Two largest commitments, ties toward W < U < B < R < G.
            primary = sorted(range(5), key=lambda i: (-commit[i], i))[:2]
        score_of: dict[int, float] = {}
        for card_index in sorted(set(pack)):
            card = self.card_set[card_index]
            if committed_phase:
                bonus = self._committed_bonus(primary, card.colors)
            else:
                bonus = self._speculation_bonus(commit, card.colors)
            score_of[card_index] = card.strength + bonus
        return _ranking(pack, score_of)


class BayesAgent:
    """Ranks by pairwise pick statistics from training data.

    The first pick of a draft uses the precomputed picked-over-everything
    scores; later picks use the affinity matrix times the collection counts.
    """

    name = "bayes"

    def __init__(self, card_set: CardSet, model: BayesModel):
        if model.set_code != card_set.code or model.set_size != card_set.size:
            raise AgentError(
                f"model for set {model.set_code!r} (S={model.set_size}) does not "
                f"match {card_set.code!r} (S={card_set.size})"
            )
        self.card_set = card_set
        self.model = model

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        if not pack:
            raise AgentError("empty pack")
        if collection.size != self.model.set_size:
            raise AgentError(f"collection size {collection.size} != {self.model.set_size}")
        if max(pack) >= self.model.set_size:
            raise AgentError("pack card outside the model's set")
        if global_pick == 1:
            score_of = {c: float(self.model.first_pick_scores[c]) for c in set(pack)}
        else:
            totals = self.model.affinity @ collection.counts.astype(np.float64)
            score_of = {c: float(totals[c]) for c in set(pack)}
        return _ranking(pack, score_of)


class NNetAgent:
    """Ranks with the trained network's logits, restricted to the pack."""

    name = "nnet"

    def __init__(self, card_set: CardSet, model: NNetModel):
        if model.set_code != card_set.code or model.set_size != card_set.size:
            raise AgentError(
                f"model for set {model.set_code!r} (S={model.set_size}) does not "
                f"match {card_set.code!r} (S={card_set.size})"
            )
        self.card_set = card_set
        self.model = model

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        if not pack:
            raise AgentError("empty pack")
        if collection.size != self.model.set_size:
            raise AgentError(f"collection size {collection.size} != {self.model.set_size}")
        x = collection.counts.astype(np.float32)[None, :]
        logits, _ = forward(self.model.network, x, mode="infer")
        scores = logits[0]
        score_of = {c: float(scores[c]) for c in set(pack)}
        return _ranking(pack, score_of)


class NoisyAgent:
    """Adds seeded Gaussian noise to another agent's scores (human-like jitter)."""

    def __init__(self, base, sigma: float, seed: int = 0):
        self.base = base
        self.sigma = sigma
        self.rng = random.Random(seed)
        self.name = f"noisy-{getattr(base, 'name', 'agent')}"

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        ranking = self.base.rank(pack, collection, global_pick)
        noise_of = {card: self.rng.gauss(0.0, self.sigma) for card in sorted(set(pack))}
        scores = [s + noise_of[c] for s, c in zip(ranking.scores, pack)]
        return AgentRanking(scores=scores, chosen=choose_from_scores(pack, scores))

