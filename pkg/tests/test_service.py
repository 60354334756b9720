import io

import pytest
from fastapi.testclient import TestClient

from draftbench.logs import parse_log_lines, validate_logs
from draftbench.models import save_model
from draftbench.service import create_app
from draftbench.training import train_bayes
from draftbench.agents import BayesAgent, RandomAgent
from draftbench.cards import Collection
from draftbench.engine import run_bot_draft


@pytest.fixture(scope="module")
def bayes_model(desk, tmp_path_factory):
    logs = []
    for seed in range(3):
        logs += run_bot_draft(desk, [RandomAgent(seed * 8 + k) for k in range(8)], seed=seed)
    model = train_bayes(logs, desk, human_only=False)
    path = tmp_path_factory.mktemp("models") / "toy-bayes.model"
    save_model(model, path)
    return model, path


@pytest.fixture()
def client(desk, bayes_model):
    _, model_path = bayes_model
    app = create_app({desk.code: desk}, models_dir=model_path.parent)
    return TestClient(app)


def create_draft(client, agents=None, seed=12):
    body = {"agents": agents or ["draftsim"] * 7, "seed": seed}
    response = client.post("/drafts", json=body)
    assert response.status_code == 201, response.text
    return response.json()


def test_sets_catalog(client, desk):
    doc = client.get("/sets").json()
    assert len(doc) == 1 and doc[0]["code"] == "DESK"
    assert len(doc[0]["cards"]) == desk.size
    card = doc[0]["cards"][0]
    assert set(card) == {"index", "name", "rarity", "colors", "strength"}


def test_create_and_state(client):
    view = create_draft(client)
    assert view["status"] == "awaiting_human"
    assert view["pick"] == 1 and len(view["pack"]) == 15
    assert view["collection"] == []
    state = client.get(f"/drafts/{view['draft_id']}/state").json()
    assert state == view
    # hidden information: only the human seat's view is exposed
    assert set(state) == {
        "draft_id", "set_code", "status", "pick", "pack_number",
        "pick_in_pack", "pack", "collection",
    }


def test_seeded_drafts_share_first_pack(client):
    a = create_draft(client, seed=77)
    b = create_draft(client, seed=77)
    assert a["pack"] == b["pack"]


def test_create_validation(client):
    assert client.post("/drafts", json={"agents": ["draftsim"] * 6}).status_code == 400
    bad = client.post("/drafts", json={"agents": ["draftsim"] * 6 + ["alphazero"]})
    assert bad.status_code == 400
    assert bad.json()["code"] in {"bad_agent_count", "bad_agent_spec"}
    assert client.post(
        "/drafts", json={"set_code": "XYZ", "agents": ["draftsim"] * 7}
    ).status_code == 400


def test_unknown_draft_404(client):
    response = client.get("/drafts/doesnotexist/state")
    assert response.status_code == 404
    assert response.json()["code"] == "draft_not_found"


def test_pick_flow_and_idempotency(client):
    view = create_draft(client)
    draft_id = view["draft_id"]
    card = view["pack"][0]
    after = client.post(f"/drafts/{draft_id}/pick", json={"card": card, "pick": 1})
    assert after.status_code == 200
    body = after.json()
    assert body["pick"] == 2 and len(body["pack"]) == 14
    assert body["collection"] == [card]

    # replaying the same round is rejected without changing state
    replay = client.post(f"/drafts/{draft_id}/pick", json={"card": card, "pick": 1})
    assert replay.status_code == 409
    assert replay.json()["code"] == "stale_pick"
    state = client.get(f"/drafts/{draft_id}/state").json()
    assert state["pick"] == 2 and len(state["pack"]) == 14


def test_illegal_pick_listed(client, desk):
    view = create_draft(client)
    missing = next(c for c in range(desk.size) if c not in view["pack"])
    response = client.post(
        f"/drafts/{view['draft_id']}/pick", json={"card": missing, "pick": 1}
    )
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "illegal_pick" and "legal picks" in body["message"]
    assert client.get(f"/drafts/{view['draft_id']}/state").json()["pick"] == 1


def test_suggestions_pure_and_consistent(client, desk, bayes_model):
    model, _ = bayes_model
    view = create_draft(client)
    draft_id = view["draft_id"]
    url = f"/drafts/{draft_id}/suggestions"
    a = client.get(url, params={"agent": "draftsim"}).json()
    b = client.get(url, params={"agent": "draftsim"}).json()
    assert a == b
    assert client.get(f"/drafts/{draft_id}/state").json() == view
    scores = [s["score"] for s in a["scores"]]
    assert scores == sorted(scores, reverse=True)
    # with an empty collection, mono/colorless cards rank by raw strength
    # (multicolor cards still pay the flat 0.6 penalty)
    strengths = [desk[s["card"]].strength for s in a["scores"]
                 if desk[s["card"]].n_colors <= 1]
    assert strengths == sorted(strengths, reverse=True)

    got = client.get(url, params={"agent": "bayes:toy-bayes.model"})
    assert got.status_code == 200
    expected = BayesAgent(desk, model).rank(view["pack"], Collection(desk.size), 1)
    top = got.json()["scores"][0]
    assert top["card"] == expected.chosen

    assert client.get(url, params={"agent": "what"}).status_code == 400


def test_full_draft_and_log_download(client, desk):
    view = create_draft(client, seed=5)
    draft_id = view["draft_id"]
    early = client.get(f"/drafts/{draft_id}/log")
    assert early.status_code == 409

    for pick in range(1, 46):
        state = client.get(f"/drafts/{draft_id}/state").json()
        assert state["pick"] == pick
        response = client.post(
            f"/drafts/{draft_id}/pick", json={"card": state["pack"][0], "pick": pick}
        )
        assert response.status_code == 200, response.text

    final = client.get(f"/drafts/{draft_id}/state").json()
    assert final["status"] == "finished"
    assert final["pack"] == [] and final["pick"] is None
    assert len(final["collection"]) == 45

    finished_pick = client.post(f"/drafts/{draft_id}/pick", json={"card": 0, "pick": 46})
    assert finished_pick.status_code == 409

    download = client.get(f"/drafts/{draft_id}/log")
    assert download.status_code == 200
    logs = parse_log_lines(io.StringIO(download.text))
    assert len(logs) == 8
    validate_logs(logs, desk)
    kinds = [log.seat_kind for log in logs]
    assert kinds.count("human") == 1 and kinds[0] == "human"


def test_snapshot_files(desk, tmp_path):
    app = create_app({desk.code: desk}, snapshot_dir=tmp_path)
    client = TestClient(app)
    view = create_draft(client, seed=9)
    client.post(f"/drafts/{view['draft_id']}/pick", json={"card": view["pack"][0], "pick": 1})
    snapshot = (tmp_path / f"{view['draft_id']}.jsonl").read_text().splitlines()
    assert len(snapshot) == 2  # create record + one round
