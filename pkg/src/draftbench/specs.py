"""Textual agent specs ("draftsim", "bayes:model.bin", ...) -> agent factories.

Grammar: NAME[:ARG[:ARG]]. Seeded agents take an optional integer seed; model
agents take a file path (resolved against a models directory when one is
configured). A factory builds a fresh agent per (draft, seat) so simulation
seeds stay independent.
"""

from __future__ import annotations

from pathlib import Path

from .agents import (
    BayesAgent,
    DraftsimAgent,
    NNetAgent,
    NoisyAgent,
    RandomAgent,
    RaredraftAgent,
)
from .cards import CardSet
from .models import BayesModel, NNetModel, load_model


class AgentSpecError(ValueError):
    pass


AGENT_SPEC_HELP = (
    "random[:seed] | raredraft[:seed] | draftsim | "
    "noisy-draftsim[:sigma[:seed]] | bayes:MODEL | nnet:MODEL"
)


class AgentFactory:
    """Builds agent instances for a parsed spec; models are loaded once."""

    def __init__(self, spec: str, card_set: CardSet, models_dir: str | Path | None = None):
        self.spec = spec
        self.card_set = card_set
        parts = spec.split(":")
        self.kind = parts[0]
        args = parts[1:]
        self.base_seed = 0
        self.sigma = 0.0
        self._model: BayesModel | NNetModel | None = None

        def int_arg(i: int, default: int) -> int:
            try:
                return int(args[i]) if len(args) > i else default
            except ValueError:
                raise AgentSpecError(f"{spec!r}: expected an integer, got {args[i]!r}") from None

        if self.kind in ("random", "raredraft"):
            self.base_seed = int_arg(0, 0)
        elif self.kind == "draftsim":
            if args:
                raise AgentSpecError(f"{spec!r}: draftsim takes no arguments")
        elif self.kind == "noisy-draftsim":
            try:
                self.sigma = float(args[0]) if args else 1.0
            except ValueError:
                raise AgentSpecError(f"{spec!r}: bad sigma {args[0]!r}") from None
            self.base_seed = int_arg(1, 0)
        elif self.kind in ("bayes", "nnet"):
            if not args or not args[0]:
                raise AgentSpecError(f"{spec!r}: {self.kind} needs a model path")
            path = Path(":".join(args))
            if models_dir is not None and not path.is_absolute():
                candidate = Path(models_dir) / path
                if candidate.exists():
                    path = candidate
            if not path.exists():
                raise AgentSpecError(f"{spec!r}: model file {path} not found")
            self._model = load_model(path, card_set)
            expected = BayesModel if self.kind == "bayes" else NNetModel
            if not isinstance(self._model, expected):
                raise AgentSpecError(f"{spec!r}: {path} holds a {type(self._model).__name__}")
        else:
            raise AgentSpecError(f"unknown agent spec {spec!r} (expected {AGENT_SPEC_HELP})")

    def build(self, instance_seed: int = 0):
        seed = self.base_seed + instance_seed
        if self.kind == "random":
            return RandomAgent(seed=seed)
        if self.kind == "raredraft":
            return RaredraftAgent(self.card_set, seed=seed)
        if self.kind == "draftsim":
            return DraftsimAgent(self.card_set)
        if self.kind == "noisy-draftsim":
            return NoisyAgent(DraftsimAgent(self.card_set), sigma=self.sigma, seed=seed)
        if self.kind == "bayes":
            return BayesAgent(self.card_set, self._model)
        return NNetAgent(self.card_set, self._model)


def parse_agent_list(
    specs: str, card_set: CardSet, n_seats: int, models_dir: str | Path | None = None
) -> list[AgentFactory]:
    """Comma-separated specs; a single spec is replicated across all seats."""
    items = [s.strip() for s in specs.split(",") if s.strip()]
    if len(items) == 1:
        items = items * n_seats
    if len(items) != n_seats:
        raise AgentSpecError(f"need 1 or {n_seats} agent specs, got {len(items)}")
    return [AgentFactory(item, card_set, models_dir) for item in items]
