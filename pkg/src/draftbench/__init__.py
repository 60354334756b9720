"""draftbench: booster-draft simulation, human-emulating pick agents, benchmarks."""

from .agents import (
    AgentRanking,
    BayesAgent,
    DraftsimAgent,
    HeuristicParams,
    NNetAgent,
    NoisyAgent,
    RandomAgent,
    RaredraftAgent,
)
from .cards import Card, CardSet, Collection, Rarity, load_bundled_set, load_set
from .engine import DraftState, PackRecipe, generate_pack, new_draft, run_bot_draft, step
from .evaluation import EvalReport, compare_agents, evaluate
from .logs import DraftLog, PickEvent, read_logs, split_dataset, validate_logs, write_logs
from .models import BayesModel, NNetModel, load_model, save_model
from .nnet import TrainConfig
from .synergy import cooccurrence, embed_2d, export_plot_data
from .training import train_bayes, train_nnet

__version__ = "0.1.0"

__all__ = [
    "AgentRanking",
    "BayesAgent",
    "BayesModel",
    "Card",
    "CardSet",
    "Collection",
    "DraftLog",
    "DraftState",
    "DraftsimAgent",
    "EvalReport",
    "HeuristicParams",
    "NNetAgent",
    "NNetModel",
    "NoisyAgent",
    "PackRecipe",
    "PickEvent",
    "RandomAgent",
    "RaredraftAgent",
    "Rarity",
    "TrainConfig",
    "compare_agents",
    "cooccurrence",
    "embed_2d",
    "evaluate",
    "export_plot_data",
    "generate_pack",
    "load_bundled_set",
    "load_model",
    "load_set",
    "new_draft",
    "read_logs",
    "run_bot_draft",
    "save_model",
    "split_dataset",
    "step",
    "train_bayes",
    "train_nnet",
    "validate_logs",
    "write_logs",
]
