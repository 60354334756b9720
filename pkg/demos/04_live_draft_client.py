"""Scripted client against the live-draft HTTP service, in one process.

Boots the FastAPI app with the bundled set, plays a full 45-pick draft through
the same endpoints the web UI uses (consulting suggestions each round), then
downloads the finished logs and validates them.

Usage: python3 demos/04_live_draft_client.py [seed]
"""

import io
import sys

from fastapi.testclient import TestClient

import draftbench as db
from draftbench.logs import parse_log_lines, validate_logs
from draftbench.service import create_app

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 11
desk = db.load_bundled_set("DESK")
client = TestClient(create_app({desk.code: desk}))

view = client.post(
    "/drafts", json={"agents": ["draftsim"] * 7, "seed": seed}
).json()
draft_id = view["draft_id"]
print(f"draft {draft_id}: human seat vs 7 heuristic bots, seed {seed}\n")

while view["status"] == "awaiting_human":
    suggestions = client.get(
        f"/drafts/{draft_id}/suggestions", params={"agent": "draftsim"}
    ).json()["scores"]
    chosen = suggestions[0]["card"]  # follow the top suggestion
    card = desk[chosen]
    if view["pick"] <= 5 or view["pick"] % 15 == 0:
        print(f"  pick {view['pick']:2d}: pack of {len(view['pack']):2d}, "
              f"taking {card.name} (score {suggestions[0]['score']:.2f})")
    view = client.post(
        f"/drafts/{draft_id}/pick", json={"card": chosen, "pick": view["pick"]}
    ).json()

print(f"\nstatus: {view['status']}; pool size {len(view['collection'])}")

download = client.get(f"/drafts/{draft_id}/log")
logs = parse_log_lines(io.StringIO(download.text))
validate_logs(logs, desk)
human = [log for log in logs if log.seat_kind == "human"][0]
print(f"downloaded {len(logs)} seat logs; human log {human.draft_id} validates")
print("first three human picks:", ", ".join(desk[p].name for p in human.picks[:3]))
