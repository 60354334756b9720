"""Card, set, pack, and collection primitives shared by every other module."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from importlib import resources
from pathlib import Path

import numpy as np

# WUBRG component order used for every 5-component color vector.
COLOR_NAMES = ("W", "U", "B", "R", "G")

# Expected rarity census for the real M19 set file, keyed by set code.
KNOWN_SET_CENSUS = {
    "M19": {"mythic": 16, "rare": 53, "uncommon": 80, "common": 111, "basic": 5},
}


class SetSchemaError(ValueError):
    """Raised when a set file violates the set schema."""


class Rarity(IntEnum):
    """Card scarcity class; the order drives rarest-first ranking."""

    BASIC = 0
    COMMON = 1
    UNCOMMON = 2
    RARE = 3
    MYTHIC = 4

    @classmethod
    def from_name(cls, name: str) -> "Rarity":
        try:
            return cls[name.upper()]
        except KeyError:
            raise SetSchemaError(f"unknown rarity {name!r}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Card:
    """One mechanically distinct card.

    ``colors`` holds the required mana symbols of each of the five colors in
    WUBRG order; ``strength`` is an expert rating in [0, 5].
    """

    index: int
    name: str
    rarity: Rarity
    colors: tuple[int, int, int, int, int]
    strength: float

    @property
    def n_colors(self) -> int:
        return sum(1 for c in self.colors if c > 0)

    @property
    def is_colorless(self) -> bool:
        return self.n_colors == 0

    def color_class(self) -> str:
        """Single letter for mono-color cards, 'C' for colorless, 'M' for multi."""
        if self.is_colorless:
            return "C"
        if self.n_colors == 1:
            return COLOR_NAMES[max(range(5), key=lambda i: self.colors[i] > 0)]
        return "M"


class CardSet:
    """An ordered, validated card list; card index = position in the file."""

    def __init__(self, code: str, cards: list[Card]):
        self.code = code
        self.cards = cards
        self.size = len(cards)
        self.by_name = {c.name: c for c in cards}
        self._by_rarity: dict[Rarity, list[int]] = {r: [] for r in Rarity}
        for c in cards:
            self._by_rarity[c.rarity].append(c.index)
        # Precomputed columns used all over the agents and evaluation code.
        self.strengths = np.array([c.strength for c in cards], dtype=np.float64)
        self.color_matrix = np.array([c.colors for c in cards], dtype=np.int64)
        self.rarity_codes = np.array([int(c.rarity) for c in cards], dtype=np.int64)

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, index: int) -> Card:
        return self.cards[index]

    def indices_of_rarity(self, rarity: Rarity, include_basics: bool = True) -> list[int]:
        if rarity is Rarity.BASIC and not include_basics:
            return []
        return list(self._by_rarity[rarity])

    def rarity_census(self) -> dict[str, int]:
        return {r.label: len(self._by_rarity[r]) for r in Rarity}


# Pack = list[int] of card indices (may repeat); Collection counts picks per card.


class Collection:
    """Per-seat count vector of picked cards; ``add`` is the only mutator."""

    __slots__ = ("counts",)

    def __init__(self, size: int, counts: np.ndarray | None = None):
        if counts is None:
            counts = np.zeros(size, dtype=np.int64)
        else:
            counts = np.asarray(counts, dtype=np.int64)
            if counts.shape != (size,):
                raise ValueError(f"counts shape {counts.shape} != ({size},)")
            if (counts < 0).any():
                raise ValueError("negative collection count")
        self.counts = counts

    @property
    def size(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def add(self, card_index: int) -> None:
        if not 0 <= card_index < self.size:
            raise IndexError(f"card index {card_index} outside set of size {self.size}")
        self.counts[card_index] += 1

    def copy(self) -> "Collection":
        return Collection(self.size, self.counts.copy())

    def card_indices(self) -> list[int]:
        """Indices with at least one copy, ascending."""
        return [int(i) for i in np.nonzero(self.counts)[0]]

    def __eq__(self, other) -> bool:
        return isinstance(other, Collection) and bool((self.counts == other.counts).all())


def _require_keys(record: dict, required: set[str], where: str) -> None:
    keys = set(record)
    missing = required - keys
    extra = keys - required
    if missing:
        raise SetSchemaError(f"{where}: missing keys {sorted(missing)}")
    if extra:
        raise SetSchemaError(f"{where}: unknown keys {sorted(extra)}")


def parse_set(doc: dict) -> CardSet:
    """Validate a parsed set document and build a CardSet."""
    _require_keys(doc, {"code", "cards"}, "set document")
    code = doc["code"]
    if not isinstance(code, str) or not code:
        raise SetSchemaError("set code must be a non-empty string")
    raw_cards = doc["cards"]
    if not isinstance(raw_cards, list) or not raw_cards:
        raise SetSchemaError("set must contain at least one card")

    cards: list[Card] = []
    seen_names: set[str] = set()
    for i, rec in enumerate(raw_cards):
        where = f"card #{i}"
        if not isinstance(rec, dict):
            raise SetSchemaError(f"{where}: not an object")
        _require_keys(rec, {"name", "rarity", "colors", "strength"}, where)
        name = rec["name"]
        if not isinstance(name, str) or not name:
            raise SetSchemaError(f"{where}: bad name")
        where = f"card #{i} ({name})"
        if name in seen_names:
            raise SetSchemaError(f"{where}: duplicate name")
        seen_names.add(name)
        rarity = Rarity.from_name(str(rec["rarity"]))
        colors = rec["colors"]
        if (
            not isinstance(colors, list)
            or len(colors) != 5
            or any(not isinstance(v, int) or isinstance(v, bool) for v in colors)
        ):
            raise SetSchemaError(f"{where}: colors must be 5 integers [W,U,B,R,G]")
        if any(v < 0 for v in colors):
            raise SetSchemaError(f"{where}: negative color component")
        strength = rec["strength"]
        if not isinstance(strength, (int, float)) or isinstance(strength, bool):
            raise SetSchemaError(f"{where}: strength must be a number")
        if not 0.0 <= float(strength) <= 5.0:
            raise SetSchemaError(f"{where}: strength {strength} outside [0, 5]")
        cards.append(Card(i, name, rarity, tuple(colors), float(strength)))

    card_set = CardSet(code, cards)
    expected = KNOWN_SET_CENSUS.get(code)
    if expected is not None:
        census = card_set.rarity_census()
        if census != expected:
            raise SetSchemaError(f"set {code}: rarity census {census} != expected {expected}")
    return card_set


def load_set(path: str | Path) -> CardSet:
    """Load and validate a set file (JSON per the schema in the README)."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SetSchemaError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SetSchemaError(f"{path}: top level must be an object")
    return parse_set(doc)


def load_bundled_set(code: str = "DESK") -> CardSet:
    """Load a set shipped inside the package (currently just DESK)."""
    data = resources.files("draftbench.data").joinpath(f"{code.lower()}.json").read_text("utf-8")
    return parse_set(json.loads(data))


def card_colors(card: Card) -> tuple[int, int, int, int, int]:
    """The card's required mana symbols per color (WUBRG)."""
    return card.colors
