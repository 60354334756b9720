"""Draft-log file format: JSONL reader/writer, validation, splitting, CSV import.

File layout: line 1 is a header record {"format": "draftbench-logs", "version": 1,
"set_code": ...} (extra header keys such as "seed" are allowed); every following
line is one draft log {"draft_id", "seat_kind", "events": [{"pack": [...],
"pick": i} x 45]} with cards referenced by set index. Collections are not stored;
they are reconstructed by replaying picks. Files ending in .gz are gzipped.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .cards import CardSet, Collection

FORMAT_NAME = "draftbench-logs"
FORMAT_VERSION = 1

PICKS_PER_DRAFT = 45
PACK_SIZE = 15


class LogParseError(ValueError):
    """Malformed log file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LogValidationError(ValueError):
    """Structurally parseable log that violates a draft invariant."""

    def __init__(self, draft_id: str, pick: int | None, message: str):
        where = f"draft {draft_id!r}" + (f" pick {pick}" if pick is not None else "")
        super().__init__(f"{where}: {message}")
        self.draft_id = draft_id
        self.pick = pick


def pack_size_at(global_pick: int) -> int:
    """Booster size presented at a given global pick (15..1 per pack)."""
    return 16 - ((global_pick - 1) % PACK_SIZE + 1)


@dataclass
class PickEvent:
    """One observed decision: the pack seen, the pool so far, and the choice."""

    global_pick: int
    pack: list[int]
    collection_before: Collection
    picked: int


@dataclass
class DraftLog:
    """One seat's 45 decisions. Collections are implicit (replayed from picks)."""

    draft_id: str
    set_code: str
    seat_kind: str  # "human" or "bot"
    packs: list[list[int]]
    picks: list[int]

    def pick_events(self, set_size: int) -> Iterator[PickEvent]:
        collection = Collection(set_size)
        for i, (pack, picked) in enumerate(zip(self.packs, self.picks)):
            yield PickEvent(i + 1, pack, collection.copy(), picked)
            collection.add(picked)

    def final_collection(self, set_size: int) -> Collection:
        collection = Collection(set_size)
        for picked in self.picks:
            collection.add(picked)
        return collection


def validate_log(log: DraftLog, card_set: CardSet) -> None:
    if log.seat_kind not in ("human", "bot"):
        raise LogValidationError(log.draft_id, None, f"bad seat_kind {log.seat_kind!r}")
    if log.set_code != card_set.code:
        raise LogValidationError(
            log.draft_id, None, f"set code {log.set_code!r} != {card_set.code!r}"
        )
    if len(log.packs) != PICKS_PER_DRAFT or len(log.picks) != PICKS_PER_DRAFT:
        raise LogValidationError(
            log.draft_id, None, f"expected {PICKS_PER_DRAFT} events, got {len(log.picks)}"
        )
    for i, (pack, picked) in enumerate(zip(log.packs, log.picks)):
        g = i + 1
        expected_size = pack_size_at(g)
        if len(pack) != expected_size:
            raise LogValidationError(
                log.draft_id, g, f"pack size {len(pack)} != {expected_size}"
            )
        for idx in pack:
            if not 0 <= idx < card_set.size:
                raise LogValidationError(log.draft_id, g, f"card index {idx} out of range")
        if picked not in pack:
            raise LogValidationError(log.draft_id, g, f"picked card {picked} not in pack")


def validate_logs(logs: list[DraftLog], card_set: CardSet) -> None:
    for log in logs:
        validate_log(log, card_set)


def _open_text(path: str | Path, mode: str):
    path = str(path)
    if path.endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def _log_to_json(log: DraftLog) -> str:
    obj = {
        "draft_id": log.draft_id,
        "seat_kind": log.seat_kind,
        "events": [{"pack": pack, "pick": pick} for pack, pick in zip(log.packs, log.picks)],
    }
    return json.dumps(obj, separators=(",", ":"))


def logs_to_jsonl(logs: list[DraftLog], extra_header: dict | None = None) -> str:
    if not logs:
        raise ValueError("refusing to serialize an empty log corpus")
    set_codes = {log.set_code for log in logs}
    if len(set_codes) != 1:
        raise ValueError(f"logs span multiple sets: {sorted(set_codes)}")
    header = {"format": FORMAT_NAME, "version": FORMAT_VERSION, "set_code": logs[0].set_code}
    if extra_header:
        header.update(extra_header)
    lines = [json.dumps(header, separators=(",", ":"))]
    lines.extend(_log_to_json(log) for log in logs)
    return "\n".join(lines) + "\n"


def write_logs(
    logs: list[DraftLog], path: str | Path, extra_header: dict | None = None
) -> None:
    with _open_text(path, "w") as fh:
        fh.write(logs_to_jsonl(logs, extra_header))


def read_logs(path: str | Path) -> list[DraftLog]:
    with _open_text(path, "r") as fh:
        return parse_log_lines(fh)


def parse_log_lines(lines) -> list[DraftLog]:
    logs: list[DraftLog] = []
    set_code = None
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogParseError(line_no, f"not valid JSON ({exc.msg})") from exc
        if line_no == 1:
            if not isinstance(obj, dict) or obj.get("format") != FORMAT_NAME:
                raise LogParseError(1, "missing draftbench-logs header record")
            if obj.get("version") != FORMAT_VERSION:
                raise LogParseError(1, f"unsupported version {obj.get('version')!r}")
            set_code = obj.get("set_code")
            if not isinstance(set_code, str):
                raise LogParseError(1, "header missing set_code")
            continue
        try:
            events = obj["events"]
            packs = [list(map(int, e["pack"])) for e in events]
            picks = [int(e["pick"]) for e in events]
            log = DraftLog(
                draft_id=str(obj["draft_id"]),
                set_code=set_code,
                seat_kind=str(obj["seat_kind"]),
                packs=packs,
                picks=picks,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise LogParseError(line_no, f"bad draft record ({exc})") from exc
        logs.append(log)
    if set_code is None:
        raise LogParseError(1, "empty file (no header record)")
    return logs


def split_dataset(
    logs: list[DraftLog], train_fraction: float = 0.8, seed: int = 0
) -> tuple[list[DraftLog], list[DraftLog]]:
    """Disjoint train/test partition by draft_id, deterministic under seed."""
    if not logs:
        raise ValueError("cannot split an empty corpus")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction {train_fraction} outside (0, 1)")
    by_id: dict[str, list[DraftLog]] = {}
    for log in logs:
        by_id.setdefault(log.draft_id, []).append(log)
    ids = sorted(by_id)
    random.Random(seed).shuffle(ids)
    n_train = int(len(ids) * train_fraction)
    train_ids = set(ids[:n_train])
    train = [log for log in logs if log.draft_id in train_ids]
    test = [log for log in logs if log.draft_id not in train_ids]
    return train, test


# --- Draftsim-style CSV export adapter ---------------------------------------
#
# Column mapping (adjust here if the upstream export differs): a CSV with header
#   draft_id, event, pack, pick [, seat_kind]
# where event is the 1-based global pick number, pack is the card names in the
# booster joined by "|", and pick is the chosen card's name. Drafts that do not
# yield exactly 45 well-formed events are skipped and counted.

EXPORT_COLUMNS = ("draft_id", "event", "pack", "pick")


class UnknownCardError(ValueError):
    def __init__(self, names: list[str]):
        super().__init__(f"unknown card names: {sorted(set(names))}")
        self.names = sorted(set(names))


@dataclass
class ImportResult:
    logs: list[DraftLog]
    skipped: int = 0
    warnings: list[str] = field(default_factory=list)


def import_draftsim_export(path: str | Path, card_set: CardSet) -> ImportResult:
    with _open_text(path, "r") as fh:
        text = fh.read()
    if not text.strip():
        return ImportResult(logs=[])
    reader = csv.DictReader(io.StringIO(text))
    header = tuple(reader.fieldnames or ())
    if not set(EXPORT_COLUMNS).issubset(header):
        raise ValueError(f"export header {header} lacks required columns {EXPORT_COLUMNS}")

    unknown: list[str] = []

    def resolve(name: str) -> int:
        card = card_set.by_name.get(name)
        if card is None:
            unknown.append(name)
            return -1
        return card.index

    rows_by_draft: dict[str, dict[int, tuple[list[int], int, str]]] = {}
    order: list[str] = []
    for row in reader:
        draft_id = row["draft_id"]
        if draft_id not in rows_by_draft:
            rows_by_draft[draft_id] = {}
            order.append(draft_id)
        try:
            event = int(row["event"])
        except (TypeError, ValueError):
            continue
        pack = [resolve(n.strip()) for n in row["pack"].split("|") if n.strip()]
        picked = resolve(row["pick"].strip())
        seat_kind = (row.get("seat_kind") or "human").strip() or "human"
        rows_by_draft[draft_id][event] = (pack, picked, seat_kind)
    if unknown:
        raise UnknownCardError(unknown)

    result = ImportResult(logs=[])
    for draft_id in order:
        events = rows_by_draft[draft_id]
        if sorted(events) != list(range(1, PICKS_PER_DRAFT + 1)):
            result.skipped += 1
            result.warnings.append(f"draft {draft_id!r}: {len(events)} events, expected 45")
            continue
        packs = [events[g][0] for g in range(1, PICKS_PER_DRAFT + 1)]
        picks = [events[g][1] for g in range(1, PICKS_PER_DRAFT + 1)]
        seat_kind = events[1][2]
        log = DraftLog(draft_id, card_set.code, seat_kind, packs, picks)
        try:
            validate_log(log, card_set)
        except LogValidationError as exc:
            result.skipped += 1
            result.warnings.append(str(exc))
            continue
        result.logs.append(log)
    return result
