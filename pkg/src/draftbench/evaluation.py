"""Benchmarks agents against recorded picks: overall, per-pick, per-strength-bin."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cards import CardSet
from .logs import DraftLog, PICKS_PER_DRAFT

BIN_WIDTH = 0.5
N_BINS = 10  # strength range [0, 5] in half-point bins, top bin closed


def strength_bin(strength: float, width: float = BIN_WIDTH) -> int:
    """Bin index for a strength rating; the top bin includes 5.0."""
    return min(int(strength / width), N_BINS - 1)


def bin_label(bin_index: int, width: float = BIN_WIDTH) -> str:
    lo = bin_index * width
    hi = lo + width
    closer = "]" if bin_index == N_BINS - 1 else ")"
    return f"[{lo:g},{hi:g}{closer}"


def strength_bins(card_set: CardSet, width: float = BIN_WIDTH) -> dict[str, list[int]]:
    """Partition of card indices by expert-strength bin."""
    out: dict[str, list[int]] = {bin_label(b, width): [] for b in range(N_BINS)}
    for card in card_set.cards:
        out[bin_label(strength_bin(card.strength, width), width)].append(card.index)
    return out


@dataclass
class EvalReport:
    agent: str
    set_code: str
    n_events: int = 0
    n_correct: int = 0
    per_pick_correct: list[int] = field(default_factory=lambda: [0] * PICKS_PER_DRAFT)
    per_pick_total: list[int] = field(default_factory=lambda: [0] * PICKS_PER_DRAFT)
    per_bin_correct: dict[str, int] = field(default_factory=dict)
    per_bin_total: dict[str, int] = field(default_factory=dict)
    per_draft: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def overall_accuracy(self) -> float:
        return self.n_correct / self.n_events if self.n_events else 0.0

    def per_pick_accuracy(self) -> list[float]:
        return [
            c / t if t else 0.0 for c, t in zip(self.per_pick_correct, self.per_pick_total)
        ]

    def per_bin_accuracy(self) -> dict[str, tuple[float, int]]:
        return {
            label: (self.per_bin_correct[label] / total if total else 0.0, total)
            for label, total in sorted(self.per_bin_total.items())
        }

    def to_dict(self) -> dict:
        return {
            "agent": self.agent,
            "set_code": self.set_code,
            "n_events": self.n_events,
            "overall_accuracy": self.overall_accuracy,
            "per_pick": [
                {"pick": i + 1, "correct": c, "total": t}
                for i, (c, t) in enumerate(zip(self.per_pick_correct, self.per_pick_total))
            ],
            "per_strength_bin": [
                {"bin": label, "accuracy": acc, "count": total}
                for label, (acc, total) in self.per_bin_accuracy().items()
            ],
        }


def evaluate(agent, logs: list[DraftLog], card_set: CardSet) -> EvalReport:
    """Replay every pick event, query the agent, and score by card identity."""
    if not logs:
        raise ValueError("no logs to evaluate")
    report = EvalReport(agent=getattr(agent, "name", type(agent).__name__), set_code=card_set.code)
    for log in logs:
        if log.set_code != card_set.code:
            raise ValueError(f"log {log.draft_id!r} is for set {log.set_code!r}")
        draft_correct = 0
        for event in log.pick_events(card_set.size):
            ranking = agent.rank(event.pack, event.collection_before, event.global_pick)
            hit = ranking.chosen == event.picked
            report.n_events += 1
            report.n_correct += hit
            report.per_pick_correct[event.global_pick - 1] += hit
            report.per_pick_total[event.global_pick - 1] += 1
            label = bin_label(strength_bin(card_set[event.picked].strength))
            report.per_bin_correct[label] = report.per_bin_correct.get(label, 0) + hit
            report.per_bin_total[label] = report.per_bin_total.get(label, 0) + 1
            draft_correct += hit
        prev = report.per_draft.get(log.draft_id, (0, 0))
        report.per_draft[log.draft_id] = (
            prev[0] + draft_correct,
            prev[1] + len(log.picks),
        )
    return report


def merge_reports(parts: list[EvalReport]) -> EvalReport:
    """Sum partial reports from parallel evaluation shards."""
    if not parts:
        raise ValueError("nothing to merge")
    merged = EvalReport(agent=parts[0].agent, set_code=parts[0].set_code)
    for part in parts:
        merged.n_events += part.n_events
        merged.n_correct += part.n_correct
        for i in range(PICKS_PER_DRAFT):
            merged.per_pick_correct[i] += part.per_pick_correct[i]
            merged.per_pick_total[i] += part.per_pick_total[i]
        for label, c in part.per_bin_correct.items():
            merged.per_bin_correct[label] = merged.per_bin_correct.get(label, 0) + c
        for label, t in part.per_bin_total.items():
            merged.per_bin_total[label] = merged.per_bin_total.get(label, 0) + t
        for draft_id, (c, t) in part.per_draft.items():
            prev = merged.per_draft.get(draft_id, (0, 0))
            merged.per_draft[draft_id] = (prev[0] + c, prev[1] + t)
    return merged


@dataclass
class AgentComparison:
    agent: str
    accuracy: float
    ci_low: float
    ci_high: float


@dataclass
class PairwiseDiff:
    agent_a: str
    agent_b: str
    diff: float  # accuracy(a) - accuracy(b)
    ci_low: float
    ci_high: float


@dataclass
class ComparisonResult:
    ranked: list[AgentComparison]
    pairwise: list[PairwiseDiff]
    n_drafts: int
    n_resamples: int

    def to_dict(self) -> dict:
        return {
            "n_drafts": self.n_drafts,
            "n_resamples": self.n_resamples,
            "ranked": [vars(a) for a in self.ranked],
            "pairwise": [vars(p) for p in self.pairwise],
        }


def compare_agents(
    reports: list[EvalReport],
    n_resamples: int = 1000,
    seed: int = 0,
    confidence: float = 0.95,
) -> ComparisonResult:
    """Draft-level paired bootstrap over a shared corpus of evaluated drafts."""
    if len(reports) < 2:
        raise ValueError("need at least two reports to compare")
    draft_ids = sorted(reports[0].per_draft)
    for report in reports[1:]:
        if sorted(report.per_draft) != draft_ids:
            raise ValueError(
                f"report {report.agent!r} covers a different corpus than {reports[0].agent!r}"
            )
    n = len(draft_ids)
    correct = np.array(
        [[report.per_draft[d][0] for d in draft_ids] for report in reports], dtype=np.float64
    )
    totals = np.array([reports[0].per_draft[d][1] for d in draft_ids], dtype=np.float64)

    rng = np.random.default_rng(seed)
    boot = np.empty((len(reports), n_resamples))
    for b in range(n_resamples):
        idx = rng.integers(0, n, size=n)  # same resample for every agent (paired)
        boot[:, b] = correct[:, idx].sum(axis=1) / totals[idx].sum()
    alpha = (1.0 - confidence) / 2.0
    lo, hi = 100 * alpha, 100 * (1 - alpha)

    ranked = sorted(
        (
            AgentComparison(
                agent=report.agent,
                accuracy=report.overall_accuracy,
                ci_low=float(np.percentile(boot[i], lo)),
                ci_high=float(np.percentile(boot[i], hi)),
            )
            for i, report in enumerate(reports)
        ),
        key=lambda a: -a.accuracy,
    )
    pairwise = []
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            diffs = boot[i] - boot[j]
            pairwise.append(
                PairwiseDiff(
                    agent_a=reports[i].agent,
                    agent_b=reports[j].agent,
                    diff=reports[i].overall_accuracy - reports[j].overall_accuracy,
                    ci_low=float(np.percentile(diffs, lo)),
                    ci_high=float(np.percentile(diffs, hi)),
                )
            )
    return ComparisonResult(
        ranked=ranked, pairwise=pairwise, n_drafts=n, n_resamples=n_resamples
    )


def per_pick_csv(report: EvalReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["pick", "correct", "total", "accuracy"])
    for i, (c, t) in enumerate(zip(report.per_pick_correct, report.per_pick_total)):
        writer.writerow([i + 1, c, t, f"{c / t:.6f}" if t else ""])
    return buf.getvalue()


def per_bin_csv(report: EvalReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["bin", "correct", "total", "accuracy"])
    for label, (acc, total) in report.per_bin_accuracy().items():
        writer.writerow([label, report.per_bin_correct.get(label, 0), total, f"{acc:.6f}"])
    return buf.getvalue()


def write_report(report: EvalReport, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = report.agent.replace(":", "_").replace("/", "_")
    (out / f"{stem}.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    (out / f"{stem}_per_pick.csv").write_text(per_pick_csv(report))
    (out / f"{stem}_per_bin.csv").write_text(per_bin_csv(report))
