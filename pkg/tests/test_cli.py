import json

import pytest
from click.testing import CliRunner

from bandlab.cli import create_app, main


@pytest.fixture
def runner():
    return CliRunner()


# ---------------------------------------------------------------------------
# command line


def test_quiver_gamma_tilde_json(runner):
    res = runner.invoke(main, ["quiver", "gamma-tilde", "--type", "A2",
                               "--window", "-1:1"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert len(doc["vertices"]) == 12
    assert all("label" in v for v in doc["vertices"])


def test_quiver_gamma_tilde_dot(runner):
    res = runner.invoke(main, ["quiver", "gamma-tilde", "--format", "dot"])
    assert res.exit_code == 0
    assert res.output.startswith("digraph")


def test_quiver_gamma0(runner):
    res = runner.invoke(main, ["quiver", "gamma0", "--type", "A3",
                               "--cox", "1,3,2"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert len(doc["vertices"]) == 12


def test_quiver_theta(runner):
    res = runner.invoke(main, ["quiver", "theta", "--type", "A2",
                               "--rows", "3"])
    assert res.exit_code == 0
    assert len(json.loads(res.output)["vertices"]) == 6


def test_band_sample_deterministic(runner):
    r1 = runner.invoke(main, ["band", "sample", "--n", "3", "--seed", "5"])
    r2 = runner.invoke(main, ["band", "sample", "--n", "3", "--seed", "5"])
    assert r1.exit_code == 0 and r1.output == r2.output
    doc = json.loads(r1.output)
    assert doc["n"] == 3 and doc["M"] == -3 and doc["N"] == 3


@pytest.mark.parametrize("kind", ["gluing", "laurent", "ladder"])
def test_verify_ok(runner, kind):
    res = runner.invoke(main, ["verify", kind, "--quick", "--samples", "2"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["ok"] is True


def test_verify_failure_exits_3(runner, monkeypatch):
    import bandlab.bands as bands

    def broken(n=3, samples=20, seed=0, words_per_band=5):
        return {"kind": "gluing", "instances": 1,
                "failures": [("forced",)], "ok": False}

    monkeypatch.setitem(bands.VERIFY_KINDS, "gluing", broken)
    res = runner.invoke(main, ["verify", "gluing", "--quick"])
    assert res.exit_code == 3


def test_verify_usage_error(runner):
    res = runner.invoke(main, ["verify", "no-such-kind"])
    assert res.exit_code == 2


def test_mutate_round_trip(runner):
    base = runner.invoke(main, ["quiver", "gamma-tilde", "--window", "-1:1"])
    twice = runner.invoke(main, ["mutate", "--window", "-1:1",
                                 "1,0", "1,0"])
    assert twice.exit_code == 0, twice.output
    doc = json.loads(twice.output)
    ref = json.loads(base.output)
    assert [v["label"] for v in doc["vertices"]] == \
        [v["label"] for v in ref["vertices"]]


def test_mutate_bad_vertex(runner):
    res = runner.invoke(main, ["mutate", "9,9"])
    assert res.exit_code == 2


def test_tsys_expand(runner):
    res = runner.invoke(main, ["tsys", "expand", "--i", "1", "--k", "2"])
    assert res.exit_code == 0
    assert "=" in res.output
    js = runner.invoke(main, ["tsys", "expand", "--format", "json"])
    assert js.exit_code == 0 and json.loads(js.output)["k"] == 2


def test_tsys_ladder(runner):
    res = runner.invoke(main, ["tsys", "ladder", "--rows", "2"])
    assert res.exit_code == 0
    assert json.loads(res.output)["ok"] is True


# ---------------------------------------------------------------------------
# HTTP API


@pytest.fixture(scope="module")
def client():
    from fastapi.testclient import TestClient

    return TestClient(create_app(n=3, window=(-1, 1), seed=0))


def state_bytes(doc):
    return json.dumps(doc, sort_keys=True).encode()


def test_state_shape(client):
    client.post("/api/reset")
    doc = client.get("/api/state").json()
    assert doc["n"] == 3 and doc["window"] == [-1, 1]
    assert doc["history"] == []
    assert len(doc["vertices"]) == 12
    for v in doc["vertices"]:
        assert {"id", "i", "r", "color", "frozen", "label"} <= set(v)
        if not v["frozen"]:
            assert "value" in v


def test_mutate_not_found(client):
    assert client.post("/api/mutate", json={"vertex": [9, 9]}).status_code == 404


def test_mutate_frozen_conflict(client):
    doc = client.get("/api/state").json()
    frozen = next(v for v in doc["vertices"] if v["frozen"])
    res = client.post("/api/mutate", json={"vertex": frozen["id"]})
    assert res.status_code == 409


def test_mutate_zero_unprocessable(client, monkeypatch):
    import bandlab.quiverzoo as zoo

    def boom(seed, vid):
        raise ZeroDivisionError("zero value")

    monkeypatch.setattr(zoo, "session_mutate", boom)
    doc = client.get("/api/state").json()
    target = next(v for v in doc["vertices"] if not v["frozen"])
    res = client.post("/api/mutate", json={"vertex": target["id"]})
    assert res.status_code == 422


def test_mutate_undo_byte_exact(client):
    client.post("/api/reset")
    before = client.get("/api/state").json()
    doc = client.get("/api/state").json()
    target = next(v for v in doc["vertices"] if not v["frozen"])
    after = client.post("/api/mutate", json={"vertex": target["id"]}).json()
    assert after["history"] == [target["id"]]
    assert state_bytes(after) != state_bytes(before)
    undone = client.post("/api/undo").json()
    assert state_bytes(undone) == state_bytes(before)
    # undo on the base state is a no-op
    again = client.post("/api/undo").json()
    assert state_bytes(again) == state_bytes(before)


def test_mutate_twice_restores_value(client):
    client.post("/api/reset")
    doc = client.get("/api/state").json()
    target = next(v for v in doc["vertices"] if not v["frozen"])
    client.post("/api/mutate", json={"vertex": target["id"]})
    back = client.post("/api/mutate", json={"vertex": target["id"]}).json()
    got = next(v for v in back["vertices"] if v["id"] == target["id"])
    assert got["value"] == target["value"]
    assert got["label"] == target["label"]


def test_reset(client):
    client.post("/api/reset")
    base = client.get("/api/state").json()
    doc = client.get("/api/state").json()
    target = next(v for v in doc["vertices"] if not v["frozen"])
    client.post("/api/mutate", json={"vertex": target["id"]})
    reset = client.post("/api/reset").json()
    assert state_bytes(reset) == state_bytes(base)


def test_band_endpoint(client):
    doc = client.get("/api/band").json()
    assert doc["n"] == 3
    assert all(len(r) == 3 for r in doc["rows"])
