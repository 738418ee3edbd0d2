import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))) + "/python")

import _torelli as t

FIXTURES = os.environ.get("TORELLI_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))


def load(name):
    with open(os.path.join(FIXTURES, name)) as f:
        return f.read()


def test_build_matrix_no():
    out = json.loads(t.build_matrix(load("no.json")))
    assert out["steiner"]["a"] == 3
    assert out["steiner"]["b"] == 6
    assert out["verify"]["ok"]
    # row sums reproduce the dropped form x_0 + x_2 + x_3
    assert out["steiner"]["dropped"] == ["1", "0", "1", "1"]


def test_scan_no_17_points():
    out = json.loads(t.scan(load("no.json"), 11))
    assert out["count"] == 17


def test_unstable_points():
    doc = load("no.json")
    a = json.loads(t.unstable(doc, "1,0,0,0"))
    assert a["test-a"]["unstable"]
    b = json.loads(t.unstable(doc, "0,1,1,1"))
    assert not b["test-a"]["unstable"]
    assert not b["test-b"]["unstable"]


def test_torelli_and_certificate_roundtrip():
    doc = load("no.json")
    verdict = json.loads(t.torelli(doc, [11, 13]))
    assert verdict["kind"] == "non-torelli"
    cert = verdict["certificate"]
    assert cert["type"]["d"] == 1
    assert cert["type"]["parts"] == [2]
    dec = json.loads(t.decompose(doc, json.dumps(cert)))
    assert dec["additivity-ok"]
    assert dec["slopes-equal"]
    ranks = sorted(p["resolution"]["rank"] for p in dec["pieces"])
    assert ranks == [1, 2]


def test_kw_certify_two_planes():
    cert = json.loads(t.kw_certify(load("p4_two_planes.json"), "1,0,0,0,0"))
    assert cert["type"]["d"] == 0
    assert sorted(cert["type"]["parts"]) == [2, 2]


def test_hilbert():
    h = json.loads(t.hilbert(7, 3))
    assert h["rank"] == 3
    assert h["c1"] == 3
    assert h["slope"] == "1"


def test_input_error():
    try:
        t.build_matrix("{not json")
    except t.InputError:
        pass
    else:
        raise AssertionError("expected InputError")
