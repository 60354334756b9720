"""Benchmark all five agents on a synthetic human-like corpus.

Simulates drafts with a noise-jittered heuristic picker (a stand-in for human
logs), trains the two learned models on the 80% split, and compares top-one
pick accuracy on the held-out 20% with draft-level bootstrap CIs.

Usage: python3 demos/02_benchmark_agents.py [n_drafts]  (default 120)
"""

import sys
import time

import draftbench as db
from draftbench.nnet import TrainConfig
from draftbench.synthetic import noisy_heuristic_corpus
from draftbench.training import train_bayes, train_nnet

n_drafts = int(sys.argv[1]) if len(sys.argv) > 1 else 120
desk = db.load_bundled_set("DESK")

t0 = time.time()
logs = noisy_heuristic_corpus(desk, n_drafts, sigma=0.5, seed=0)
train, test = db.split_dataset(logs, 0.8, seed=1)
print(f"simulated {len(logs)} seat-logs ({n_drafts} drafts) in {time.time() - t0:.1f}s; "
      f"{len(train)} train / {len(test)} test")

t0 = time.time()
bayes_model = train_bayes(train, desk, human_only=False)
print(f"bayes counting pass: {time.time() - t0:.1f}s")

t0 = time.time()
nnet_model, metrics = train_nnet(
    train, desk, TrainConfig(epochs=30, batch_size=256, learning_rate=3e-3, seed=3),
    human_only=False,
)
print(f"network training ({metrics[-1].epoch} epochs): {time.time() - t0:.1f}s, "
      f"final loss {metrics[-1].loss:.3f}")

agents = [
    db.RandomAgent(0),
    db.RaredraftAgent(desk, 0),
    db.DraftsimAgent(desk),
    db.BayesAgent(desk, bayes_model),
    db.NNetAgent(desk, nnet_model),
]
reports = [db.evaluate(agent, test, desk) for agent in agents]
comparison = db.compare_agents(reports, n_resamples=1000, seed=9)

print(f"\ntop-one accuracy over {reports[0].n_events} held-out pick events:")
print(f"  {'agent':10s} {'accuracy':>9s}   95% bootstrap CI")
for entry in comparison.ranked:
    print(f"  {entry.agent:10s} {100 * entry.accuracy:8.2f}%   "
          f"[{100 * entry.ci_low:.2f}, {100 * entry.ci_high:.2f}]")

print("\npairwise differences (positive means the first agent is better):")
for diff in comparison.pairwise:
    print(f"  {diff.agent_a:10s} - {diff.agent_b:10s} {100 * diff.diff:+6.2f}pp "
          f"[{100 * diff.ci_low:+.2f}, {100 * diff.ci_high:+.2f}]")
