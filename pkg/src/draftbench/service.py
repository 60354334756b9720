"""HTTP service hosting live drafts: one human seat against 7 configured agents.

Rounds are lockstep: the bots act only when the human's pick arrives, and the
whole round (8 picks + pass) is applied atomically under the draft's lock.
Nothing about bot seats leaks out before the draft finishes.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import engine
from .cards import CardSet
from .logs import DraftLog, PICKS_PER_DRAFT, logs_to_jsonl
from .specs import AgentFactory, AgentSpecError

HUMAN_SEAT = 0
N_BOTS = engine.N_SEATS - 1


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateDraftRequest(BaseModel):
    set_code: str | None = None
    agents: list[str]
    seed: int | None = None


class PickRequest(BaseModel):
    card: int
    pick: int  # expected global pick number; stale retries are rejected unchanged


@dataclass
class LiveDraft:
    draft_id: str
    card_set: CardSet
    state: engine.DraftState
    agents: list  # 7 bot agents for seats 1..7
    agent_specs: list[str]
    seed: int
    packs_seen: list[list[list[int]]] = field(default_factory=list)
    picks_made: list[list[int]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    snapshot_path: Path | None = None

    @property
    def finished(self) -> bool:
        return self.state.terminal

    def status(self) -> str:
        return "finished" if self.finished else "awaiting_human"

    def human_view(self) -> dict:
        seat = self.state.seats[HUMAN_SEAT]
        collection = []
        for idx, count in enumerate(seat.collection.counts):
            collection.extend([idx] * int(count))
        return {
            "draft_id": self.draft_id,
            "set_code": self.card_set.code,
            "status": self.status(),
            "pick": None if self.finished else self.state.global_pick,
            "pack_number": self.state.pack_number,
            "pick_in_pack": self.state.pick_in_pack,
            "pack": [] if self.finished else sorted(seat.current_pack),
            "collection": collection,
        }

    def apply_round(self, human_card: int) -> None:
        snapshot = [list(seat.current_pack) for seat in self.state.seats]
        picks = [human_card]
        for bot_index, agent in enumerate(self.agents):
            seat = self.state.seats[bot_index + 1]
            ranking = agent.rank(
                list(seat.current_pack), seat.collection, self.state.global_pick
            )
            picks.append(ranking.chosen)
        engine.step(self.state, picks)
        # Committed only after the engine accepted the whole round.
        self.packs_seen.append(snapshot)
        self.picks_made.append(picks)
        if self.snapshot_path is not None:
            with open(self.snapshot_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps({"round": len(self.picks_made), "picks": picks}) + "\n")

    def seat_logs(self) -> list[DraftLog]:
        return [
            DraftLog(
                draft_id=f"{self.draft_id}-p{k}",
                set_code=self.card_set.code,
                seat_kind="human" if k == HUMAN_SEAT else "bot",
                packs=[round_packs[k] for round_packs in self.packs_seen],
                picks=[round_picks[k] for round_picks in self.picks_made],
            )
            for k in range(engine.N_SEATS)
        ]


def create_app(
    sets: dict[str, CardSet],
    models_dir: str | Path | None = None,
    snapshot_dir: str | Path | None = None,
    cors_origins: list[str] | None = None,
) -> FastAPI:
    if not sets:
        raise ValueError("service needs at least one loaded set")
    app = FastAPI(title="draftbench draft service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    drafts: dict[str, LiveDraft] = {}
    store_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    def get_draft(draft_id: str) -> LiveDraft:
        with store_lock:
            draft = drafts.get(draft_id)
        if draft is None:
            raise ApiError(404, "draft_not_found", f"no draft with id {draft_id!r}")
        return draft

    @app.get("/sets")
    def list_sets() -> list[dict]:
        return [
            {
                "code": card_set.code,
                "size": card_set.size,
                "cards": [
                    {
                        "index": card.index,
                        "name": card.name,
                        "rarity": card.rarity.label,
                        "colors": list(card.colors),
                        "strength": card.strength,
                    }
                    for card in card_set.cards
                ],
            }
            for card_set in sets.values()
        ]

    @app.post("/drafts", status_code=201)
    def create_draft(body: CreateDraftRequest) -> dict:
        if body.set_code is None and len(sets) == 1:
            set_code = next(iter(sets))
        else:
            set_code = body.set_code
        card_set = sets.get(set_code or "")
        if card_set is None:
            raise ApiError(400, "unknown_set", f"set {set_code!r} is not loaded")
        if len(body.agents) != N_BOTS:
            raise ApiError(
                400, "bad_agent_count", f"need exactly {N_BOTS} agent specs, got {len(body.agents)}"
            )
        seed = body.seed if body.seed is not None else uuid.uuid4().int % 2**31
        try:
            agents = [
                AgentFactory(spec, card_set, models_dir).build(seed * engine.N_SEATS + k + 1)
                for k, spec in enumerate(body.agents)
            ]
        except AgentSpecError as exc:
            raise ApiError(400, "bad_agent_spec", str(exc)) from exc
        draft_id = uuid.uuid4().hex[:12]
        snapshot_path = None
        if snapshot_dir is not None:
            snapshot_path = Path(snapshot_dir) / f"{draft_id}.jsonl"
            snapshot_path.parent.mkdir(parents=True, exist_ok=True)
            snapshot_path.write_text(
                json.dumps(
                    {"set_code": card_set.code, "seed": seed, "agents": body.agents}
                )
                + "\n"
            )
        draft = LiveDraft(
            draft_id=draft_id,
            card_set=card_set,
            state=engine.new_draft(card_set, seed),
            agents=agents,
            agent_specs=list(body.agents),
            seed=seed,
            snapshot_path=snapshot_path,
        )
        with store_lock:
            drafts[draft_id] = draft
        return draft.human_view()

    @app.get("/drafts/{draft_id}/state")
    def get_state(draft_id: str) -> dict:
        draft = get_draft(draft_id)
        with draft.lock:
            return draft.human_view()

    @app.post("/drafts/{draft_id}/pick")
    def submit_pick(draft_id: str, body: PickRequest) -> dict:
        draft = get_draft(draft_id)
        with draft.lock:
            if draft.finished:
                raise ApiError(409, "draft_finished", "the draft is already complete")
            current = draft.state.global_pick
            if body.pick != current:
                raise ApiError(
                    409,
                    "stale_pick",
                    f"expected pick {current}, got {body.pick}; state unchanged",
                )
            pack = draft.state.seats[HUMAN_SEAT].current_pack
            if body.card not in pack:
                raise ApiError(
                    400,
                    "illegal_pick",
                    f"card {body.card} not in pack; legal picks: {sorted(set(pack))}",
                )
            draft.apply_round(body.card)
            return draft.human_view()

    @app.get("/drafts/{draft_id}/suggestions")
    def get_suggestions(draft_id: str, agent: str) -> dict:
        draft = get_draft(draft_id)
        try:
            factory = AgentFactory(agent, draft.card_set, models_dir)
        except AgentSpecError as exc:
            raise ApiError(400, "bad_agent_spec", str(exc)) from exc
        with draft.lock:
            if draft.finished:
                raise ApiError(409, "draft_finished", "no pack to rank; draft is complete")
            seat = draft.state.seats[HUMAN_SEAT]
            pack = list(seat.current_pack)
            ranking = factory.build(draft.seed).rank(
                pack, seat.collection, draft.state.global_pick
            )
        scored = sorted(
            ({"card": c, "score": s} for c, s in zip(pack, ranking.scores)),
            key=lambda item: (-item["score"], item["card"]),
        )
        return {"agent": agent, "pick": draft.state.global_pick, "scores": scored}

    @app.get("/drafts/{draft_id}/log")
    def get_log(draft_id: str) -> PlainTextResponse:
        draft = get_draft(draft_id)
        with draft.lock:
            if not draft.finished:
                raise ApiError(
                    409, "draft_unfinished",
                    f"{PICKS_PER_DRAFT - len(draft.picks_made)} picks remain",
                )
            seat_logs = draft.seat_logs()
        payload = logs_to_jsonl(seat_logs, extra_header={"seed": draft.seed})
        return PlainTextResponse(payload, media_type="application/x-ndjson")

    return app
