"""Synthetic corpus generators for benchmarks, demos, and tests."""

from __future__ import annotations

import random

import numpy as np

from .agents import AgentRanking, DraftsimAgent, NoisyAgent, RandomAgent, choose_from_scores
from .cards import CardSet, Collection, Rarity
from .engine import run_bot_draft
from .logs import DraftLog


class DominantColorRuleAgent:
    """A fully deterministic picker driven by the collection's dominant color.

    Preference is lexicographic: commons of the collection's dominant color
    (most copies holding the color, ties toward W < U < B < R < G) come first,
    everything else after, both tiers ordered by a fixed priority that shuffles
    within rarity but always prefers commons to uncommons to rares to mythics.
    The rarity-respecting priority keeps the marginal pick frequency of every
    card aligned with the rule's own ordering (cards in the same priority tier
    appear in packs at the same rate), which is what makes the rule recoverable
    by a model that scores cards from the collection alone.
    """

    name = "rule"

    def __init__(self, card_set: CardSet, priority_seed: int = 17):
        self.card_set = card_set
        self._has_color = card_set.color_matrix > 0
        colored = self._has_color.any(axis=1)
        self._is_common = card_set.rarity_codes == int(Rarity.COMMON)
        self._colorless_common = self._is_common & ~colored
        rng = random.Random(priority_seed)
        ordered: list[int] = []
        for rarity in (Rarity.COMMON, Rarity.UNCOMMON, Rarity.RARE, Rarity.MYTHIC, Rarity.BASIC):
            group = card_set.indices_of_rarity(rarity)
            rng.shuffle(group)
            # colored cards ahead of colorless within the rarity: a fresh seat
            # then opens on a colored card and acquires a dominant color at once
            ordered.extend([c for c in group if colored[c]])
            ordered.extend([c for c in group if not colored[c]])
        self.priority = np.zeros(card_set.size)
        for rank, card_index in enumerate(ordered):
            self.priority[card_index] = card_set.size - rank

    def preference(self, collection: Collection) -> np.ndarray:
        """Score per set card; the rule's pick is the pack argmax of this."""
        per_color = self._has_color.T @ collection.counts
        scores = self.priority.copy()
        if per_color.max() > 0:
            dominant = int(per_color.argmax())
            size = self.card_set.size
            # First take commons of the dominant color; failing that, colorless
            # commons (they keep the pool's color signal clean); then the rest.
            scores[self._is_common & self._has_color[:, dominant]] += 4 * size
            scores[self._colorless_common] += 2 * size
        return scores

    def rank(self, pack: list[int], collection: Collection, global_pick: int) -> AgentRanking:
        preference = self.preference(collection)
        scores = [float(preference[c]) for c in pack]
        return AgentRanking(scores=scores, chosen=choose_from_scores(pack, scores))


def rule_corpus(card_set: CardSet, n_drafts: int, seed: int = 0) -> list[DraftLog]:
    """One rule-following seat per draft, drafting against 7 random seats.

    Random neighbors deplete packs uniformly, so which cards remain in a pack
    carries no information; every recorded pick is then a pure function of the
    rule seat's own collection, which is the property tests rely on. Only the
    rule seat's log is kept.
    """
    logs: list[DraftLog] = []
    for d in range(n_drafts):
        agents = [DominantColorRuleAgent(card_set)] + [
            RandomAgent(seed=(seed + d) * 8 + k) for k in range(1, 8)
        ]
        seat_logs = run_bot_draft(
            card_set, agents, seed=seed + d, draft_id_prefix=f"rule-{seed + d}"
        )
        logs.append(seat_logs[0])
    return logs


def noisy_heuristic_corpus(
    card_set: CardSet, n_drafts: int, sigma: float = 0.5, seed: int = 0
) -> list[DraftLog]:
    """Human-like drafts: expert-heuristic picks with Gaussian rating jitter."""
    logs: list[DraftLog] = []
    for d in range(n_drafts):
        agents = [
            NoisyAgent(DraftsimAgent(card_set), sigma=sigma, seed=(seed + d) * 8 + k)
            for k in range(8)
        ]
        logs.extend(
            run_bot_draft(card_set, agents, seed=seed + d, draft_id_prefix=f"noisy-{seed + d}")
        )
    return logs
