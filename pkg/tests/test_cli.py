import json
from pathlib import Path

import pytest

from gpdfact import catalog as C
from gpdfact.cli import functor_document, groupoid_document, load, main, parse_groupoid
from gpdfact.dec import dec
from gpdfact.gpd import functors_equal, identity_functor
from gpdfact.oracle import EnumerationBounds, enumerate_groupoids, iso_search

GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def bz2_doc():
    return json.loads((GOLDEN / "bz2.json").read_text())


def test_round_trip_every_enumerated_groupoid():
    for g in enumerate_groupoids(EnumerationBounds()):
        doc = groupoid_document(g)
        again = parse_groupoid(json.loads(json.dumps(doc)))
        assert again == g


@pytest.mark.parametrize("mutate, code, needle", [
    (lambda d: d["units"].pop("*"), 2, "no unit"),
    (lambda d: d["comp"].pop(), 2, "no composite"),
    (lambda d: d["comp"].append(["s", "s", "s"]), 2, "two composites"),
    (lambda d: d["arrows"].append({"name": "t", "d": "*", "c": "nowhere"}), 1, "unknown object"),
    (lambda d: d.pop("comp"), 1, "missing field"),
    (lambda d: d["objects"].append("*"), 1, "duplicate"),
])
def test_document_problems(tmp_path, capsys, mutate, code, needle):
    doc = bz2_doc()
    mutate(doc)
    assert main(["validate", write(tmp_path, "g.json", doc)]) == code
    assert needle in capsys.readouterr().err


def test_composite_for_non_composable_pair(tmp_path, capsys):
    doc = json.loads((GOLDEN / "d2.json").read_text())
    doc["comp"].append(["1a", "1b", "1a"])
    assert main(["validate", write(tmp_path, "g.json", doc)]) == 2
    assert "non-composable" in capsys.readouterr().err


def test_functor_with_unmapped_arrow(tmp_path, capsys):
    doc = functor_document(C.point_into_bz2())
    doc["f1"] = {}
    assert main(["validate", write(tmp_path, "f.json", doc)]) == 2
    assert "not mapped" in capsys.readouterr().err


def test_functor_breaking_units(tmp_path, capsys):
    doc = functor_document(identity_functor(C.bz2()))
    doc["f1"] = {"1": "s", "s": "1"}
    assert main(["validate", write(tmp_path, "f.json", doc)]) == 2
    assert "unit" in capsys.readouterr().err


def test_analyze_identity_and_out_file(tmp_path, capsys):
    path = write(tmp_path, "f.json", functor_document(identity_functor(C.codiscrete(2))))
    out = tmp_path / "report.json"
    assert main(["analyze", path, "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report == json.loads(capsys.readouterr().out)
    assert report["full"] and report["faithful"] and report["essentially_surjective"]
    assert report["discrete_fibration"] and all(report["final"].values())


def test_factorize_fibration_and_identity(tmp_path, capsys):
    d2 = C.discrete(2)
    fib = C.functor_from_labels(d2, C.terminal(), {"a": "*", "b": "*"}, {"1a": "1", "1b": "1"})
    assert main(["factorize", write(tmp_path, "fib.json", functor_document(fib))]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["J_isomorphism"] and summary["K_discrete_fibration"]
    ident = functor_document(identity_functor(C.bz2()))
    assert main(["factorize", write(tmp_path, "id.json", ident)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["J_isomorphism"] and summary["K_isomorphism"]


def test_pi0_of_groupoid(capsys):
    assert main(["pi0", str(GOLDEN / "d2.json")]) == 0
    assert json.loads(capsys.readouterr().out) == {"a": ["a"], "b": ["b"]}
    assert main(["pi0", str(GOLDEN / "i2.json")]) == 0
    assert json.loads(capsys.readouterr().out) == {"a": ["a", "b"]}


def test_dec_command_matches_golden(tmp_path, capsys):
    assert main(["dec", str(GOLDEN / "bz2.json")]) == 0
    out = capsys.readouterr().out
    assert out == (GOLDEN / "dec_bz2.json").read_text()
    assert iso_search(parse_groupoid(json.loads(out)), dec(C.bz2())) is not None
    assert main(["dec", str(GOLDEN / "point_bz2.json")]) == 0
    assert set(json.loads(capsys.readouterr().out)["f0"].values()) == {"1"}


def test_support_command(capsys):
    assert main(["support", str(GOLDEN / "bz2.json")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["objects"]) == 1 and len(doc["arrows"]) == 1


def test_lift_command(tmp_path, capsys):
    spec = write(tmp_path, "map.json", {"map": {"x": "*", "y": "*"}})
    assert main(["lift", str(GOLDEN / "bz2.json"), "--map", spec]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["objects"]) == 2 and len(doc["arrows"]) == 8
    bad = write(tmp_path, "bad.json", {"map": {"x": "nowhere"}})
    assert main(["lift", str(GOLDEN / "bz2.json"), "--map", bad]) == 1


def test_boff_command(capsys):
    assert main(["boff", str(GOLDEN / "point_bz2.json")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["middle"]["arrows"]) == 2
    assert doc["bo"]["f0"] == {"*": "*"}


def test_factorize_outputs_load_back(tmp_path):
    out = tmp_path / "fac"
    assert main(["factorize", str(GOLDEN / "point_bz2.json"), "--out", str(out)]) == 0
    t = load(out / "T.json")
    j, k = load(out / "J.json"), load(out / "K.json")
    assert j.cod == t == k.dom
    assert (len(t.obj), len(t.arr)) == (2, 4)
    assert functors_equal(j, load(out / "J.json"))
