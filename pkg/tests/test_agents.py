import math
import random

import numpy as np
import pytest

from draftbench.agents import (
    BayesAgent,
    DraftsimAgent,
    HeuristicParams,
    NNetAgent,
    NoisyAgent,
    RandomAgent,
    RaredraftAgent,
    AgentError,
    choose_from_scores,
)
from draftbench.cards import Card, CardSet, Collection, Rarity
from draftbench.engine import run_bot_draft
from draftbench.models import NNetModel
from draftbench.nnet import init_network
from draftbench.training import train_bayes


def C(index, name, colors, strength, rarity=Rarity.COMMON):
    return Card(index, name, rarity, tuple(colors), strength)


@pytest.fixture(scope="module")
def heur_set():
    cards = [
        C(0, "Red A", (0, 0, 0, 1, 0), 4.0),
        C(1, "Red B", (0, 0, 0, 1, 0), 4.0),
        C(2, "Green A", (0, 0, 0, 0, 1), 4.0),
        C(3, "Green B", (0, 0, 0, 0, 1), 4.0),
        C(4, "Double Blue", (0, 2, 0, 0, 0), 3.0),
        C(5, "Splash Blue", (0, 1, 0, 0, 0), 3.0),
        C(6, "White Hit", (1, 0, 0, 0, 0), 3.6),
        C(7, "Colorless Kit", (0, 0, 0, 0, 0), 3.0),
        C(8, "White Blue Pair", (1, 1, 0, 0, 0), 3.0),
        C(9, "Rainbow Mess", (1, 0, 1, 1, 1), 3.0),
        C(10, "Weak Red", (0, 0, 0, 1, 0), 1.0),
    ]
    return CardSet("HEUR", cards)


def pool(card_set, *indices):
    coll = Collection(card_set.size)
    for i in indices:
        coll.add(i)
    return coll


def scores_by_card(agent, pack, collection, pick):
    ranking = agent.rank(pack, collection, pick)
    return dict(zip(pack, ranking.scores)), ranking


# --- ranking interface ---------------------------------------------------------


def test_choose_from_scores_tiebreak():
    assert choose_from_scores([9, 4, 7], [1.0, 1.0, 0.5]) == 4
    assert choose_from_scores([9, 4, 4], [0.2, 0.8, 0.8]) == 4


def all_agents(desk):
    bayes = train_bayes(
        run_bot_draft(desk, [RandomAgent(k) for k in range(8)], seed=3),
        desk,
        human_only=False,
    )
    nnet = NNetModel(desk.code, desk.size, init_network(desk.size, desk.size, seed=0))
    return [
        RandomAgent(seed=1),
        RaredraftAgent(desk, seed=1),
        DraftsimAgent(desk),
        BayesAgent(desk, bayes),
        NNetAgent(desk, nnet),
        NoisyAgent(DraftsimAgent(desk), sigma=0.4, seed=2),
    ]


def test_pack_permutation_never_changes_choice(desk):
    rng = random.Random(0)
    for agent in all_agents(desk):
        for trial in range(15):
            pack = rng.sample(range(desk.size - 2), rng.randint(2, 10))
            coll = pool(desk, *rng.sample(range(desk.size), rng.randint(0, 6)))
            pick = rng.randint(2, 45)
            shuffled = pack.copy()
            rng.shuffle(shuffled)
            a = agent.rank(pack, coll, pick)
            b = agent.rank(shuffled, coll, pick)
            assert a.chosen in pack and b.chosen in shuffled
            # same stream state was consumed by both calls for seeded agents,
            # so compare via two fresh agents instead when randomness is involved
    for make in (lambda: RandomAgent(7), lambda: RaredraftAgent(desk, 7)):
        pack = [5, 3, 11, 8, 20]
        shuffled = [20, 8, 3, 11, 5]
        assert make().rank(pack, pool(desk), 4).chosen == make().rank(shuffled, pool(desk), 4).chosen


def test_chosen_always_in_pack_and_scores_align(desk):
    for agent in all_agents(desk):
        ranking = agent.rank([12, 3, 3, 30], pool(desk, 1, 1, 16), 17)
        assert len(ranking.scores) == 4
        assert ranking.chosen in (12, 3, 30)


# --- random agent --------------------------------------------------------------


def test_random_forced_pick():
    agent = RandomAgent(seed=0)
    assert agent.rank([4], Collection(10), 15).chosen == 4


def test_random_deterministic_under_seed():
    picks_a = [RandomAgent(seed=9).rank([1, 2, 3, 4], Collection(6), 1).chosen for _ in range(5)]
    picks_b = [RandomAgent(seed=9).rank([1, 2, 3, 4], Collection(6), 1).chosen for _ in range(5)]
    assert picks_a == picks_b
    stream = RandomAgent(seed=9)
    seq = [stream.rank([1, 2, 3, 4], Collection(6), 1).chosen for _ in range(30)]
    assert len(set(seq)) > 1  # the stream advances between calls


def test_random_empty_pack_error():
    with pytest.raises(AgentError):
        RandomAgent(0).rank([], Collection(5), 1)


# --- raredraft agent -------------------------------------------------------------


def test_raredraft_takes_rarest(desk):
    mythic = desk.by_name["Chancellor of Both Inboxes"].index
    commons = [c.index for c in desk.cards if c.rarity == Rarity.COMMON][:6]
    agent = RaredraftAgent(desk, seed=0)
    assert agent.rank(commons + [mythic], Collection(desk.size), 1).chosen == mythic


def test_raredraft_color_tiebreak(desk):
    red_commons = [c.index for c in desk.cards if c.rarity == Rarity.COMMON and c.colors[3] > 0]
    other_commons = [c.index for c in desk.cards
                     if c.rarity == Rarity.COMMON and c.colors[3] == 0 and not c.is_colorless][:5]
    coll = pool(desk, red_commons[0], red_commons[0], red_commons[1])
    for seed in range(20):
        agent = RaredraftAgent(desk, seed=seed)
        chosen = agent.rank(other_commons + red_commons[1:3], coll, 9).chosen
        assert chosen in red_commons[1:3]


def test_raredraft_uniform_when_no_collection(desk):
    commons = [c.index for c in desk.cards if c.rarity == Rarity.COMMON][:8]
    seen = {RaredraftAgent(desk, seed=s).rank(commons, Collection(desk.size), 1).chosen
            for s in range(60)}
    assert len(seen) >= 5  # spread across the pack, not pinned to one card


# --- expert heuristic agent ------------------------------------------------------


def test_empty_collection_ranks_by_strength(heur_set):
    agent = DraftsimAgent(heur_set)
    scores, ranking = scores_by_card(agent, [0, 5, 6, 7, 10], Collection(heur_set.size), 1)
    assert scores[0] == 4.0 and scores[5] == 3.0 and scores[6] == 3.6
    assert scores[7] == 3.0 and scores[10] == 1.0  # colorless bonus is zero too
    assert ranking.chosen == 0


def test_speculation_bonus_capped(heur_set):
    agent = DraftsimAgent(heur_set)
    coll = pool(heur_set, 0, 1)  # red commitment = 2 * (4.0 - 2.0) = 4.0
    scores, _ = scores_by_card(agent, [10, 7, 5], coll, 5)
    assert scores[10] == pytest.approx(1.0 + 0.9)  # min(0.257 * 4.0, 0.9) = 0.9
    assert scores[7] == pytest.approx(3.0 + 0.9)  # colorless inherits the best bonus
    assert scores[5] == pytest.approx(3.0 + 0.0)  # blue commitment is zero


def test_speculation_bonus_literal_max_reading(heur_set):
    agent = DraftsimAgent(heur_set, HeuristicParams(literal_max_bonus=True))
    coll = pool(heur_set, 0, 1)
    scores, _ = scores_by_card(agent, [10], coll, 5)
    assert scores[10] == pytest.approx(1.0 + 0.257 * 4.0)


def test_speculation_two_color_card(heur_set):
    agent = DraftsimAgent(heur_set)
    coll = pool(heur_set, 6, 6)  # white commitment = 2 * 1.6 = 3.2
    scores, _ = scores_by_card(agent, [8, 9], coll, 5)
    white_bonus = min(0.257 * 3.2, 0.9)
    assert scores[8] == pytest.approx(3.0 + white_bonus - 0.6)
    assert scores[9] == pytest.approx(3.0)  # 4+ colors: no bonus, no penalty


def test_multicolor_penalty_with_no_commitment(heur_set):
    agent = DraftsimAgent(heur_set)
    scores, _ = scores_by_card(agent, [8], Collection(heur_set.size), 1)
    assert scores[8] == pytest.approx(3.0 - 0.6)


def test_committed_phase_symbol_penalties(heur_set):
    agent = DraftsimAgent(heur_set)
    coll = pool(heur_set, 0, 1, 2, 3)  # red and green both committed at 4.0
    scores, _ = scores_by_card(agent, [4, 5, 0, 7, 8], coll, 10)
    assert scores[4] == pytest.approx(3.0 - 1.0)  # UU: one off symbol beyond the first
    assert scores[5] == pytest.approx(3.0)  # single off symbol: no penalty
    assert scores[0] == pytest.approx(4.0 + 2.0)  # on-color
    assert scores[7] == pytest.approx(3.0 + 2.0)  # colorless counts as on-color
    assert scores[8] == pytest.approx(3.0 - 1.0)  # WU: two off symbols


def test_phase_deadline_forces_commitment(heur_set):
    agent = DraftsimAgent(heur_set)
    coll = pool(heur_set, 0, 1)  # only red is committed
    spec_scores, _ = scores_by_card(agent, [6, 2], coll, 18)
    assert spec_scores[6] == pytest.approx(3.6 + 0.0)
    dead_scores, _ = scores_by_card(agent, [6, 2], coll, 19)
    # primaries become red plus white (largest remaining commitment wins ties at 0, W first)
    assert dead_scores[6] == pytest.approx(3.6 + 2.0)
    assert dead_scores[2] == pytest.approx(4.0 + 0.0)  # one green symbol: no penalty


def test_offcolor_addition_never_raises_oncolor_bias(heur_set):
    # Scoped to additions that do not flip the speculation/committed phase:
    # crossing into the committed phase legitimately jumps an on-color card's
    # bonus from the 0.9 cap to +2.0.
    agent = DraftsimAgent(heur_set)
    params = agent.params
    rng = random.Random(4)
    red_card = 0
    checked = 0
    while checked < 200:
        coll = pool(heur_set, *[rng.randrange(heur_set.size) for _ in range(rng.randint(0, 12))])
        pick = rng.randint(1, 45)
        bumped = coll.copy()
        bumped.add(rng.choice([2, 3]))  # green cards never touch red commitment
        phases = []
        for c in (coll, bumped):
            commits = agent.color_commitment(c)
            committed = (commits > params.commit_threshold).sum() >= 2
            phases.append(committed or pick >= params.phase_switch_pick)
        if phases[0] != phases[1]:
            continue
        before = agent.rank([red_card], coll, pick).scores[0]
        after = agent.rank([red_card], bumped, pick).scores[0]
        assert after <= before + 1e-12
        checked += 1


# --- bayes agent -----------------------------------------------------------------


@pytest.fixture(scope="module")
def toy_bayes(desk):
    logs = []
    for seed in range(6):
        logs += run_bot_draft(desk, [RandomAgent(seed * 8 + k) for k in range(8)], seed=seed)
    return train_bayes(logs, desk, human_only=False)


def test_bayes_single_copy_scores_are_matrix_column(desk, toy_bayes):
    agent = BayesAgent(desk, toy_bayes)
    j = 5
    coll = pool(desk, j)
    pack = [0, 7, 19, 33]
    scores, _ = scores_by_card(agent, pack, coll, 8)
    for c in pack:
        assert scores[c] == pytest.approx(toy_bayes.affinity[c, j], abs=1e-12)


def test_bayes_scores_linear_in_collection(desk, toy_bayes):
    agent = BayesAgent(desk, toy_bayes)
    rng = random.Random(1)
    pack = [2, 9, 24]
    for _ in range(20):
        a = pool(desk, *[rng.randrange(desk.size) for _ in range(rng.randint(0, 8))])
        b = pool(desk, *[rng.randrange(desk.size) for _ in range(rng.randint(0, 8))])
        both = Collection(desk.size, a.counts + b.counts)
        sa = agent.rank(pack, a, 10).scores
        sb = agent.rank(pack, b, 10).scores
        sab = agent.rank(pack, both, 10).scores
        assert np.allclose(np.array(sa) + np.array(sb), sab, atol=1e-9)


def test_bayes_brute_force_equivalence(desk, toy_bayes):
    agent = BayesAgent(desk, toy_bayes)
    rng = random.Random(7)
    for _ in range(30):
        pack = rng.sample(range(desk.size), 6)
        coll = pool(desk, *[rng.randrange(desk.size) for _ in range(rng.randint(1, 10))])
        scores, _ = scores_by_card(agent, pack, coll, 12)
        for i in pack:
            expected = 0.0
            for j in range(desk.size):
                if coll.counts[j]:
                    ratio = (toy_bayes.pool_taken[i, j] + 1.0) / (toy_bayes.pool_seen[i, j] + 2.0)
                    expected += coll.counts[j] * math.log(ratio)
            assert scores[i] == pytest.approx(expected, abs=1e-9)


def test_bayes_first_pick_uses_first_pick_scores(desk):
    # corpus rule: card 0 is taken whenever present, otherwise lowest index
    class AlwaysZero:
        name = "always-zero"

        def rank(self, pack, collection, pick):
            chosen = 0 if 0 in pack else min(pack)
            return type("R", (), {"scores": [1.0 if c == chosen else 0.0 for c in pack],
                                  "chosen": chosen})()

    logs = []
    for seed in range(50):
        logs += run_bot_draft(desk, [AlwaysZero() for _ in range(8)], seed=seed)
    model = train_bayes(logs, desk, human_only=False)
    agent = BayesAgent(desk, model)
    rng = random.Random(3)
    for _ in range(30):
        pack = rng.sample(range(1, desk.size - 2), 14) + [0]
        assert agent.rank(pack, Collection(desk.size), 1).chosen == 0


def test_bayes_set_mismatch(desk, mono_set, toy_bayes):
    with pytest.raises(AgentError):
        BayesAgent(mono_set, toy_bayes)
    agent = BayesAgent(desk, toy_bayes)
    with pytest.raises(AgentError):
        agent.rank([0, 1], Collection(12), 3)


# --- nnet agent ------------------------------------------------------------------


def zero_model(card_set):
    net = init_network(card_set.size, card_set.size, seed=0)
    for name, arr in net.parameters().items():
        arr[...] = 0
    return NNetModel(card_set.code, card_set.size, net)


def test_nnet_mask_forces_single_card(desk):
    agent = NNetAgent(desk, zero_model(desk))
    assert agent.rank([17], Collection(desk.size), 40).chosen == 17


def test_nnet_zero_model_ties_break_low(desk):
    agent = NNetAgent(desk, zero_model(desk))
    assert agent.rank([31, 4, 18], Collection(desk.size), 2).chosen == 4


def test_nnet_duplicate_pack_entries_share_scores(desk):
    agent = NNetAgent(desk, zero_model(desk))
    ranking = agent.rank([6, 6, 13], pool(desk, 2), 5)
    assert ranking.scores[0] == ranking.scores[1]
    assert ranking.chosen in (6, 13)


def test_nnet_mask_scale_invariance(desk):
    net = init_network(desk.size, desk.size, seed=3)
    agent = NNetAgent(desk, NNetModel(desk.code, desk.size, net))
    pack = [1, 8, 22, 30]
    ranking = agent.rank(pack, pool(desk, 4, 4, 9), 11)
    scaled = [s * 7.5 for s in ranking.scores]
    assert choose_from_scores(pack, scaled) == ranking.chosen


def test_nnet_set_mismatch(desk, mono_set):
    with pytest.raises(AgentError):
        NNetAgent(mono_set, zero_model(desk))


# --- noise wrapper ---------------------------------------------------------------


def test_noisy_agent_deterministic_and_legal(desk):
    base = DraftsimAgent(desk)
    picks_a = [NoisyAgent(base, 0.7, seed=5).rank([3, 9, 27], Collection(desk.size), 1).chosen
               for _ in range(4)]
    picks_b = [NoisyAgent(base, 0.7, seed=5).rank([3, 9, 27], Collection(desk.size), 1).chosen
               for _ in range(4)]
    assert picks_a == picks_b
    assert set(picks_a) <= {3, 9, 27}
