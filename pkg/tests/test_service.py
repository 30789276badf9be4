import json
import random
import threading
import urllib.error
import urllib.request

import pytest

from quiverlab import classify, from_matrix, mutate, seed
from quiverlab.service import make_server


@pytest.fixture(scope="module")
def server():
    srv = make_server(None, "127.0.0.1", 0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def _get(base, path):
    with urllib.request.urlopen(base + path) as r:
        return r.status, json.loads(r.read())


def _post(base, path, obj):
    req = urllib.request.Request(
        base + path, data=json.dumps(obj).encode(), headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as r:
            return r.status, json.loads(r.read())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())


def test_health(server):
    status, body = _get(server, "/health")
    assert status == 200 and body == {"v": 1, "status": "ok"}


def test_seed_endpoint_matches_library(server):
    status, body = _get(server, "/seed?family=D-tilde&n=10")
    assert status == 200
    assert body["matrix"] == seed("D-tilde", 10).matrix()


def test_seed_endpoint_rejects_invalid(server):
    with pytest.raises(urllib.error.HTTPError) as err:
        urllib.request.urlopen(server + "/seed?family=E-tilde&n=11")
    assert err.value.code == 400


def test_mutate_endpoint_equals_core(server):
    rng = random.Random(0)
    q = seed("D-tilde", 9)
    for _ in range(25):
        j = rng.randrange(9)
        status, body = _post(server, "/mutate", {"matrix": q.matrix(), "vertex": j})
        assert status == 200
        expected = mutate(q, j)
        assert from_matrix(body["matrix"]) == expected
        q = expected


def test_classify_endpoint_equals_core(server):
    rng = random.Random(1)
    q = seed("D-tilde", 8)
    for _ in range(15):
        q = mutate(q, rng.randrange(8))
        status, body = _post(server, "/classify", {"matrix": q.matrix()})
        assert status == 200
        verdict = classify(q)
        assert body["family"] == verdict.family
        assert body["subtype"] == verdict.subtype
        assert body["method"] == verdict.method
        cert = body["certificate"]
        assert set(cert["roles"]) == {str(v) for v in verdict.certificate.roles}
        for s, t in cert["motif_edges"]:
            assert q.b[s][t] > 0


def test_malformed_requests_get_4xx(server):
    status, body = _post(server, "/mutate", {"matrix": [[0, 1], [1, 0]], "vertex": 0})
    assert status == 400 and "error" in body
    status, body = _post(server, "/mutate", {"matrix": seed("A", 3).matrix()})
    assert status == 400
    status, body = _post(server, "/nope", {})
    assert status == 404
