"""Seeded booster generation and the 8-seat pick/pass/repack state machine."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cards import CardSet, Collection, Rarity
from .logs import DraftLog, PICKS_PER_DRAFT, PACK_SIZE

N_SEATS = 8
PACKS_PER_SEAT = 3


class DraftEngineError(RuntimeError):
    pass


class IllegalPickError(DraftEngineError):
    def __init__(self, seat: int, card_index: int):
        super().__init__(f"seat {seat}: card {card_index} is not in the current pack")
        self.seat = seat
        self.card_index = card_index


@dataclass(frozen=True)
class PackRecipe:
    """Booster composition: 11 commons, 3 uncommons, 1 rare slot (mythic 1/8)."""

    commons: int = 11
    uncommons: int = 3
    rare_slots: int = 1
    mythic_prob: float = 1.0 / 8.0
    basics_in_common_pool: bool = False

    @property
    def pack_size(self) -> int:
        return self.commons + self.uncommons + self.rare_slots


def generate_pack(
    card_set: CardSet, rng: random.Random, recipe: PackRecipe = PackRecipe()
) -> list[int]:
    """Deal one booster: uniform without replacement within each rarity pool."""
    commons = card_set.indices_of_rarity(Rarity.COMMON)
    if recipe.basics_in_common_pool:
        commons = commons + card_set.indices_of_rarity(Rarity.BASIC)
    uncommons = card_set.indices_of_rarity(Rarity.UNCOMMON)
    rares = card_set.indices_of_rarity(Rarity.RARE)
    mythics = card_set.indices_of_rarity(Rarity.MYTHIC)

    if len(commons) < recipe.commons:
        raise DraftEngineError(f"set has {len(commons)} commons, need {recipe.commons}")
    if len(uncommons) < recipe.uncommons:
        raise DraftEngineError(f"set has {len(uncommons)} uncommons, need {recipe.uncommons}")
    if len(rares) < recipe.rare_slots or len(mythics) < recipe.rare_slots:
        raise DraftEngineError("set needs at least one rare and one mythic")

    pack = rng.sample(commons, recipe.commons)
    pack += rng.sample(uncommons, recipe.uncommons)
    for _ in range(recipe.rare_slots):
        pool = mythics if rng.random() < recipe.mythic_prob else rares
        pack += rng.sample(pool, 1)
    return pack


@dataclass
class Seat:
    collection: Collection
    current_pack: list[int]


@dataclass
class DraftState:
    card_set: CardSet
    seats: list[Seat]
    pending_rounds: list[list[list[int]]]  # unopened rounds, each 8 packs
    pack_number: int = 1
    pick_in_pack: int = 1
    global_pick: int = 1
    seed: int = 0
    terminal: bool = False

    @property
    def rounds_opened(self) -> int:
        return self.pack_number

    def cards_in_packs(self) -> int:
        return sum(len(s.current_pack) for s in self.seats)

    def cards_in_collections(self) -> int:
        return sum(s.collection.total for s in self.seats)


def new_draft(card_set: CardSet, seed: int, recipe: PackRecipe = PackRecipe()) -> DraftState:
    """Fresh 8-seat draft; all 24 boosters are dealt up front from the seed."""
    rng = random.Random(seed)
    rounds = [
        [generate_pack(card_set, rng, recipe) for _ in range(N_SEATS)]
        for _ in range(PACKS_PER_SEAT)
    ]
    seats = [Seat(Collection(card_set.size), rounds[0][k]) for k in range(N_SEATS)]
    return DraftState(card_set=card_set, seats=seats, pending_rounds=rounds[1:], seed=seed)


def pass_direction(pack_number: int) -> int:
    """Seat offset a surviving pack moves by: +1 for packs 1 and 3, -1 for pack 2."""
    return -1 if pack_number == 2 else 1


def step(state: DraftState, picks: list[int]) -> DraftState:
    """Apply one simultaneous pick for all 8 seats, then pass or repack."""
    if state.terminal:
        raise DraftEngineError("draft is already finished")
    if len(picks) != N_SEATS:
        raise DraftEngineError(f"need {N_SEATS} picks, got {len(picks)}")
    for k, (seat, picked) in enumerate(zip(state.seats, picks)):
        if picked not in seat.current_pack:
            raise IllegalPickError(k, picked)
    for seat, picked in zip(state.seats, picks):
        seat.current_pack.remove(picked)
        seat.collection.add(picked)

    if state.pick_in_pack < PACK_SIZE:
        direction = pass_direction(state.pack_number)
        packs = [seat.current_pack for seat in state.seats]
        for k, seat in enumerate(state.seats):
            seat.current_pack = packs[(k - direction) % N_SEATS]
        state.pick_in_pack += 1
        state.global_pick += 1
    elif state.pack_number < PACKS_PER_SEAT:
        fresh = state.pending_rounds.pop(0)
        for seat, pack in zip(state.seats, fresh):
            seat.current_pack = pack
        state.pack_number += 1
        state.pick_in_pack = 1
        state.global_pick += 1
    else:
        state.terminal = True
    return state


def run_bot_draft(
    card_set: CardSet, agents: list, seed: int, draft_id_prefix: str | None = None
) -> list[DraftLog]:
    """Drive a full draft with 8 agents; returns one bot-seat log per seat."""
    if len(agents) != N_SEATS:
        raise DraftEngineError(f"need {N_SEATS} agents, got {len(agents)}")
    if draft_id_prefix is None:
        draft_id_prefix = f"sim-{seed}"
    state = new_draft(card_set, seed)
    packs_seen: list[list[list[int]]] = [[] for _ in range(N_SEATS)]
    picks_made: list[list[int]] = [[] for _ in range(N_SEATS)]
    for _ in range(PICKS_PER_DRAFT):
        picks = []
        for k, (agent, seat) in enumerate(zip(agents, state.seats)):
            pack = list(seat.current_pack)
            ranking = agent.rank(pack, seat.collection, state.global_pick)
            packs_seen[k].append(pack)
            picks_made[k].append(ranking.chosen)
            picks.append(ranking.chosen)
        step(state, picks)
    return [
        DraftLog(
            draft_id=f"{draft_id_prefix}-p{k}",
            set_code=card_set.code,
            seat_kind="bot",
            packs=packs_seen[k],
            picks=picks_made[k],
        )
        for k in range(N_SEATS)
    ]
