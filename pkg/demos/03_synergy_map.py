"""Co-draft statistics and the 2D synergy map.

Counts how often card pairs end up in the same finished pool, converts the
lift over independence into distances, and projects the cards to a plane by
maximizing the Pearson correlation between true and embedded distances.

Usage: python3 demos/03_synergy_map.py [n_drafts] [out.csv]
"""

import sys

import numpy as np

import draftbench as db
from draftbench.synergy import cooccurrence, embed_2d, export_plot_data
from draftbench.synthetic import noisy_heuristic_corpus

n_drafts = int(sys.argv[1]) if len(sys.argv) > 1 else 150
out_path = sys.argv[2] if len(sys.argv) > 2 else "synergy_plot.csv"

desk = db.load_bundled_set("DESK")
logs = noisy_heuristic_corpus(desk, n_drafts, sigma=0.5, seed=2)
stats = cooccurrence(logs, desk)
print(f"{stats.n_collections} finished pools; {stats.kept.size} cards drafted at least once")

kept = [int(i) for i in stats.kept]
pairs = []
for a in range(len(kept)):
    for b in range(a + 1, len(kept)):
        pairs.append((stats.lift[a, b], kept[a], kept[b]))
pairs.sort(reverse=True)
print("\nmost synergistic pairs (lift = co-draft rate over independence):")
for lift, a, b in pairs[:8]:
    print(f"  {lift:5.2f}  {desk[a].name} ({desk[a].color_class()})  +  "
          f"{desk[b].name} ({desk[b].color_class()})")

embedding = embed_2d(stats.distance, seed=0, iters=5000)
print(f"\n2D projection: pearson r = {embedding.pearson_r:.4f} "
      f"after {embedding.iterations} iterations")

# same-color cards should sit closer together than cross-color pairs
coords = embedding.coords
classes = [desk[i].color_class() for i in kept]
same, cross = [], []
for a in range(len(kept)):
    for b in range(a + 1, len(kept)):
        d = float(np.linalg.norm(coords[a] - coords[b]))
        (same if classes[a] == classes[b] and classes[a] in "WUBRG" else cross).append(d)
print(f"mean embedded distance, same-color pairs: {np.mean(same):.3f}; "
      f"other pairs: {np.mean(cross):.3f}")

export_plot_data(stats, embedding, desk, out_path)
print(f"\nwrote {out_path} (name, color, x, y) for external plotting")
