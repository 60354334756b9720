"""Run one 8-seat draft with the expert-heuristic bot and watch a seat's picks.

Usage: python3 demos/01_run_a_draft.py [seed]
"""

import sys

import draftbench as db

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
desk = db.load_bundled_set("DESK")
agents = [db.DraftsimAgent(desk) for _ in range(8)]
logs = db.run_bot_draft(desk, agents, seed=seed)

print(f"set {desk.code} ({desk.size} cards), seed {seed}, 8 heuristic seats\n")
print("seat 0, pick by pick:")
for event_no, (pack, pick) in enumerate(zip(logs[0].packs, logs[0].picks), start=1):
    card = desk[pick]
    marker = "*" if card.rarity.label in ("rare", "mythic") else " "
    print(
        f"  pick {event_no:2d}  pack of {len(pack):2d} -> "
        f"{card.name:30s} {card.color_class()} {card.rarity.label:8s} "
        f"strength {card.strength:.2f} {marker}"
    )

pool = logs[0].final_collection(desk.size)
by_color = {}
for index in pool.card_indices():
    by_color.setdefault(desk[index].color_class(), []).append(desk[index].name)
print("\nfinal 45-card pool by color:")
for color, names in sorted(by_color.items()):
    print(f"  {color}: {len(names)} distinct -> {', '.join(sorted(names)[:4])}, ...")
